export interface ImplicationView {
  premise: string[];
  conclusion: string[];
}

export interface ExamplesView {
  objects: string[];
  rows: string[][];
}

export interface SessionView {
  id: string;
  status: "running" | "finished";
  attributes: string[];
  examples: ExamplesView;
  accepted: ImplicationView[];
  pending: ImplicationView | null;
}

export interface ConceptView {
  extent: string[];
  intent: string[];
}

export interface LatticeView {
  concepts: ConceptView[];
  covers: [number, number][];
}

export interface SeedPayload {
  objects: string[];
  rows: string[][];
}

export type Answer =
  | { kind: "accept" }
  | { kind: "reject"; object: string; intent: string[] };
