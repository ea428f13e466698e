import type { LatticeView } from "./types";

export interface NodeLayout {
  rank: number;
  x: number;
  label: string;
}

export interface DiagramLayout {
  nodes: NodeLayout[];
  covers: [number, number][];
  maxRank: number;
}

/** Longest-path distance from the bottom concept along the covering arcs. */
export function ranksFromBottom(count: number, covers: [number, number][]): number[] {
  const ranks = new Array<number>(count).fill(0);
  // relax in topological order; covers always point upward so iterating to a
  // fixpoint terminates after at most `count` sweeps
  let changed = true;
  let sweeps = 0;
  while (changed) {
    changed = false;
    sweeps += 1;
    if (sweeps > count + 1) {
      throw new Error("covering arcs contain a cycle");
    }
    for (const [lower, upper] of covers) {
      if (ranks[upper] < ranks[lower] + 1) {
        ranks[upper] = ranks[lower] + 1;
        changed = true;
      }
    }
  }
  return ranks;
}

/**
 * Reduced labeling: each attribute sits at its attribute concept (the one
 * with the largest extent among those whose intent carries it), each object
 * at its object concept (smallest extent containing it).
 */
export function reducedLabels(lattice: LatticeView): string[] {
  const labels = lattice.concepts.map(() => ({ attrs: [] as string[], objs: [] as string[] }));
  const attributes = new Set<string>();
  const objects = new Set<string>();
  for (const c of lattice.concepts) {
    c.intent.forEach((m) => attributes.add(m));
    c.extent.forEach((g) => objects.add(g));
  }
  for (const m of attributes) {
    let best = -1;
    lattice.concepts.forEach((c, i) => {
      if (c.intent.includes(m) && (best < 0 || c.extent.length > lattice.concepts[best].extent.length)) {
        best = i;
      }
    });
    if (best >= 0) labels[best].attrs.push(m);
  }
  for (const g of objects) {
    let best = -1;
    lattice.concepts.forEach((c, i) => {
      if (c.extent.includes(g) && (best < 0 || c.extent.length < lattice.concepts[best].extent.length)) {
        best = i;
      }
    });
    if (best >= 0) labels[best].objs.push(g);
  }
  return labels.map(({ attrs, objs }) =>
    [attrs.sort().join(","), objs.sort().join(",")].filter((s) => s.length > 0).join(" / "));
}

function barycenterPass(order: number[][], neighbours: Map<number, number[]>): void {
  for (const row of order) {
    const position = new Map<number, number>();
    order.forEach((r) => r.forEach((n, i) => position.set(n, i)));
    row.sort((a, b) => {
      const score = (n: number) => {
        const ns = neighbours.get(n) ?? [];
        if (ns.length === 0) return position.get(n) ?? 0;
        return ns.reduce((acc, m) => acc + (position.get(m) ?? 0), 0) / ns.length;
      };
      return score(a) - score(b);
    });
  }
}

/**
 * Layered diagram: rank = longest path from the bottom (so every covering
 * arc strictly increases rank and no edge is horizontal), with two
 * barycenter sweeps ordering each layer.
 */
export function layoutLattice(lattice: LatticeView): DiagramLayout {
  const ranks = ranksFromBottom(lattice.concepts.length, lattice.covers);
  const maxRank = ranks.reduce((a, b) => Math.max(a, b), 0);
  const layers: number[][] = [];
  for (let r = 0; r <= maxRank; r++) {
    layers.push(ranks.map((rank, i) => [rank, i]).filter(([rank]) => rank === r).map(([, i]) => i));
  }
  const up = new Map<number, number[]>();
  const down = new Map<number, number[]>();
  for (const [lower, upper] of lattice.covers) {
    up.set(lower, [...(up.get(lower) ?? []), upper]);
    down.set(upper, [...(down.get(upper) ?? []), lower]);
  }
  barycenterPass(layers, down);
  barycenterPass(layers, up);
  const labels = reducedLabels(lattice);
  const nodes: NodeLayout[] = lattice.concepts.map((_, i) => ({ rank: ranks[i], x: 0, label: labels[i] }));
  for (const layer of layers) {
    layer.forEach((n, i) => {
      nodes[n].x = layer.length > 1 ? i / (layer.length - 1) : 0.5;
    });
  }
  return { nodes, covers: lattice.covers, maxRank };
}
