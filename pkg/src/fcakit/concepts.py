"""Concept enumeration with Close-by-One, covering-relation construction,
concept-lattice assembly with meets/joins, DOT export, and enumeration-delay
instrumentation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .bitset import full_mask, iter_bits, lowest_bit, mask_of, to_frozenset
from .contexts import Context
from .errors import FcaError

IndexSet = frozenset[int]


@dataclass(frozen=True)
class Concept:
    """Extent/intent pair; each side derives the other in the owning context."""

    extent: IndexSet
    intent: IndexSet

    def names(self, ctx: Context) -> tuple[tuple[str, ...], tuple[str, ...]]:
        return ctx.object_names(self.extent), ctx.attribute_names(self.intent)


@dataclass(frozen=True)
class ConceptLattice:
    """All concepts of a context plus the covering arcs (lower, upper)."""

    context: Context
    concepts: tuple[Concept, ...]
    covers: tuple[tuple[int, int], ...]
    bottom: int
    top: int

    def __len__(self) -> int:
        return len(self.concepts)


@dataclass
class DelayStats:
    """Closure-computation counts between consecutive streamed outputs."""

    strategy: str
    delays: list[int] = field(default_factory=list)
    total_steps: int = 0
    concept_count: int = 0

    @property
    def max_delay(self) -> int:
        return max(self.delays, default=0)

    def as_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "concepts": self.concept_count,
            "total_steps": self.total_steps,
            "max_delay": self.max_delay,
            "delays": list(self.delays),
        }


def _pick_strategy(ctx: Context, strategy: str) -> str:
    if strategy == "auto":
        # enumerating by the smaller side is cheaper
        return "bottom-up" if ctx.n_objects < ctx.n_attributes else "top-down"
    if strategy not in ("bottom-up", "top-down"):
        raise FcaError(f"unknown strategy {strategy!r}")
    return strategy


class _CboRun:
    """One Close-by-One depth-first traversal over extents of `ctx`.

    Children of extent A are (A + {i})'' for i past the node's next-candidate
    index, kept only when the new extent gains no object below i (canonical
    generation).  `steps` counts closure computations.
    """

    def __init__(self, ctx: Context):
        self.ctx = ctx
        self.steps = 0

    def close(self, object_mask: int) -> tuple[int, int]:
        self.steps += 1
        intent = self.ctx.intent_mask(object_mask)
        return self.ctx.extent_mask(intent), intent

    def walk(self, emit_on_backtrack: bool) -> Iterator[tuple[int, int]]:
        n = self.ctx.n_objects
        root_extent, root_intent = self.close(0)
        # stack entries: extent, intent, next candidate object index
        stack: list[list[int]] = [[root_extent, root_intent, 0]]
        if not emit_on_backtrack:
            yield root_extent, root_intent
        while stack:
            extent, intent, i = stack[-1]
            if i >= n:
                stack.pop()
                if emit_on_backtrack:
                    yield extent, intent
                continue
            stack[-1][2] = i + 1
            if extent >> i & 1:
                continue
            child_intent = intent & self.ctx.rows[i]
            self.steps += 1
            child_extent = self.ctx.extent_mask(child_intent)
            added = child_extent & ~extent
            if lowest_bit(added) != i:
                continue
            # next candidate: first object past i not already in the child
            j = i + 1
            while j < n and child_extent >> j & 1:
                j += 1
            if not emit_on_backtrack:
                yield child_extent, child_intent
            stack.append([child_extent, child_intent, j])


def iter_concepts(ctx: Context, strategy: str = "auto", stream: bool = False,
                  presort: bool = False) -> Iterator[Concept]:
    """Every formal concept exactly once, in depth-first canonical-tree order.

    Batch order (stream=False) emits at discovery; stream=True emits each
    concept when its subtree is left, which bounds the enumeration delay.
    presort applies the cardinality heuristic to the enumeration axis first
    (fewer non-canonical closures in practice); it changes the output order
    but never the output set, since results are mapped back to the original
    indices.
    """
    from .contexts import sort_by_cardinality

    chosen = _pick_strategy(ctx, strategy)
    axis = "objects" if chosen == "bottom-up" else "attributes"
    base, perm = (sort_by_cardinality(ctx, axis) if presort else (ctx, None))
    if chosen == "bottom-up":
        run = _CboRun(base)
        for extent, intent in run.walk(stream):
            if perm is not None:
                extent = mask_of(perm[g] for g in iter_bits(extent))
            yield Concept(to_frozenset(extent), to_frozenset(intent))
    else:
        run = _CboRun(base.transpose())
        for intent, extent in run.walk(stream):
            if perm is not None:
                intent = mask_of(perm[m] for m in iter_bits(intent))
            yield Concept(to_frozenset(extent), to_frozenset(intent))


def enumerate_concepts(ctx: Context, strategy: str = "auto", presort: bool = False) -> list[Concept]:
    return list(iter_concepts(ctx, strategy, presort=presort))


def measure_delay(ctx: Context, strategy: str = "auto") -> DelayStats:
    """Closure computations between consecutive outputs under the
    emit-on-backtrack discipline, including the gaps at both ends.
    """
    chosen = _pick_strategy(ctx, strategy)
    base = ctx if chosen == "bottom-up" else ctx.transpose()
    run = _CboRun(base)
    stats = DelayStats(strategy=chosen)
    last = 0
    for _ in run.walk(emit_on_backtrack=True):
        stats.delays.append(run.steps - last)
        last = run.steps
        stats.concept_count += 1
    if run.steps > last:
        stats.delays.append(run.steps - last)
    stats.total_steps = run.steps
    return stats


def canonical_generation(ctx: Context, extent: IndexSet) -> list[int]:
    """The unique generator sequence of a closed extent: repeatedly add the
    least missing object and close, starting from the closure of nothing.
    """
    target = mask_of(extent)
    if ctx.close_objects_mask(target) != target:
        raise FcaError("not an extent")
    current = ctx.close_objects_mask(0)
    sequence = []
    while current != target:
        i = lowest_bit(target & ~current)
        sequence.append(i)
        current = ctx.close_objects_mask(current | (1 << i))
    return sequence


def covering_relation(ctx: Context, concepts: list[Concept]) -> list[tuple[int, int]]:
    """Arcs (lower, upper) of the concept order, found per concept from the
    closures (B + {m})'': the inclusion-minimal candidate intents are the
    lower neighbours.
    """
    index_by_intent: dict[int, int] = {}
    intents = []
    for k, c in enumerate(concepts):
        mask = mask_of(c.intent)
        index_by_intent[mask] = k
        intents.append(mask)
    width = full_mask(ctx.n_attributes)
    arcs: list[tuple[int, int]] = []
    for k, intent in enumerate(intents):
        candidates: set[int] = set()
        for m in iter_bits(width & ~intent):
            candidates.add(ctx.close_attributes_mask(intent | (1 << m)))
        minimal = [c for c in candidates
                   if not any(o != c and c & o == o for o in candidates)]
        for cand in minimal:
            if cand not in index_by_intent:
                raise FcaError("incomplete concept list: missing closure candidate")
            arcs.append((index_by_intent[cand], k))
    arcs.sort()
    return arcs


def concept_lattice(ctx: Context, strategy: str = "auto") -> ConceptLattice:
    concepts = enumerate_concepts(ctx, strategy)
    covers = covering_relation(ctx, concepts)
    top = max(range(len(concepts)), key=lambda k: len(concepts[k].extent))
    bottom = min(range(len(concepts)), key=lambda k: len(concepts[k].extent))
    return ConceptLattice(ctx, tuple(concepts), tuple(covers), bottom, top)


def lattice_meet(lat: ConceptLattice, indices: IndexSet | list[int]) -> Concept:
    """Infimum of a set of concepts: intersect extents, close the intent
    union; the empty meet is the top concept (all objects, their intent).
    """
    ctx = lat.context
    extent = full_mask(ctx.n_objects)
    intent_union = 0
    for j in indices:
        c = lat.concepts[j]
        extent &= mask_of(c.extent)
        intent_union |= mask_of(c.intent)
    return Concept(to_frozenset(extent), to_frozenset(ctx.close_attributes_mask(intent_union)))


def lattice_join(lat: ConceptLattice, indices: IndexSet | list[int]) -> Concept:
    ctx = lat.context
    intent = full_mask(ctx.n_attributes)
    extent_union = 0
    for j in indices:
        c = lat.concepts[j]
        intent &= mask_of(c.intent)
        extent_union |= mask_of(c.extent)
    return Concept(to_frozenset(ctx.close_objects_mask(extent_union)), to_frozenset(intent))


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(lat: ConceptLattice, labeling: str = "reduced") -> str:
    """DOT digraph of the lattice diagram, drawn bottom-to-top.

    Reduced labeling places each attribute at its attribute concept and each
    object at its object concept; full labeling prints whole extents/intents.
    """
    ctx = lat.context
    if labeling not in ("full", "reduced"):
        raise FcaError(f"unknown labeling {labeling!r}")
    labels: list[str] = []
    if labeling == "full":
        for c in lat.concepts:
            ext = ",".join(ctx.object_names(c.extent)) or "{}"
            intt = ",".join(ctx.attribute_names(c.intent)) or "{}"
            labels.append(f"{{{ext}}} / {{{intt}}}")
    else:
        attr_at = {}
        obj_at = {}
        for m in range(ctx.n_attributes):
            attr_at.setdefault(ctx.close_attributes_mask(1 << m), []).append(ctx.attributes[m])
        for g in range(ctx.n_objects):
            obj_at.setdefault(ctx.close_objects_mask(1 << g), []).append(ctx.objects[g])
        for c in lat.concepts:
            ups = attr_at.get(mask_of(c.intent), [])
            downs = obj_at.get(mask_of(c.extent), [])
            labels.append(" / ".join(filter(None, [",".join(ups), ",".join(downs)])))
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=circle];"]
    for k, label in enumerate(labels):
        lines.append(f'  c{k} [label="{_dot_escape(label)}"];')
    for low, high in lat.covers:
        lines.append(f"  c{low} -> c{high};")
    lines.append("}")
    return "\n".join(lines) + "\n"
