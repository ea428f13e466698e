import type { ImplicationView, SessionView } from "./types";

export function formatSet(items: string[]): string {
  return `{${items.join(", ")}}`;
}

export function formatImplication(imp: ImplicationView): string {
  return `${formatSet(imp.premise)} → ${formatSet(imp.conclusion)}`;
}

export function questionText(imp: ImplicationView): string {
  return `Does every object with ${formatSet(imp.premise)} also have ${formatSet(imp.conclusion)}?`;
}

export type QuestionPanel =
  | { kind: "question"; text: string; implication: ImplicationView }
  | { kind: "summary"; basis: string[] };

/** What the question area shows: the open question, or the final basis. */
export function questionPanel(view: SessionView): QuestionPanel {
  if (view.status === "running" && view.pending) {
    return { kind: "question", text: questionText(view.pending), implication: view.pending };
  }
  return { kind: "summary", basis: view.accepted.map(formatImplication) };
}

/**
 * Non-blocking hint for the counterexample checklist.  The server remains
 * the validator; this only mirrors the refutation test: the object must have
 * the whole premise and miss part of the conclusion.  Returns null when the
 * checklist could refute the pending question.
 */
export function refutationHint(pending: ImplicationView, checked: Set<string>): string | null {
  if (!pending.premise.every((m) => checked.has(m))) {
    return "will not refute the question: the premise is not fully checked";
  }
  if (pending.conclusion.every((m) => checked.has(m))) {
    return "will not refute the question: the whole conclusion is checked";
  }
  return null;
}

/** Row models for the example table, one flag per attribute column. */
export function exampleRows(view: SessionView): { object: string; cells: boolean[] }[] {
  return view.examples.objects.map((object, i) => ({
    object,
    cells: view.attributes.map((m) => view.examples.rows[i].includes(m)),
  }));
}
