import { describe, expect, it } from "vitest";

import { exampleRows, formatImplication, questionPanel, questionText, refutationHint } from "../src/model";
import type { SessionView } from "../src/types";

const running: SessionView = {
  id: "s1",
  status: "running",
  attributes: ["a", "b", "c", "d"],
  examples: { objects: ["1", "2"], rows: [["a", "d"], ["a", "c"]] },
  accepted: [{ premise: ["c", "d"], conclusion: ["b"] }],
  pending: { premise: ["b"], conclusion: ["c"] },
};

const finished: SessionView = {
  ...running,
  status: "finished",
  pending: null,
};

describe("question panel", () => {
  it("renders the pending implication as a question", () => {
    const panel = questionPanel(running);
    expect(panel.kind).toBe("question");
    if (panel.kind === "question") {
      expect(panel.text).toBe("Does every object with {b} also have {c}?");
    }
  });

  it("shows the final basis once finished", () => {
    const panel = questionPanel(finished);
    expect(panel.kind).toBe("summary");
    if (panel.kind === "summary") {
      expect(panel.basis).toEqual(["{c, d} → {b}"]);
    }
  });

  it("formats implications with an arrow", () => {
    expect(formatImplication({ premise: ["a"], conclusion: ["b", "c"] }))
      .toBe("{a} → {b, c}");
    expect(questionText({ premise: [], conclusion: ["a"] }))
      .toBe("Does every object with {} also have {a}?");
  });
});

describe("refutation hints", () => {
  const pending = { premise: ["b"], conclusion: ["c"] };

  it("warns when the premise is unchecked", () => {
    expect(refutationHint(pending, new Set(["a"]))).toMatch(/premise/);
  });

  it("warns when the whole conclusion is checked", () => {
    expect(refutationHint(pending, new Set(["b", "c"]))).toMatch(/conclusion/);
  });

  it("stays silent for a genuine refutation", () => {
    expect(refutationHint(pending, new Set(["b", "d"]))).toBeNull();
  });

  it("never blocks: it only produces text", () => {
    // the hint is a pure function of the checklist; submission paths do not
    // consult it, so a wrong hint cannot change any outcome
    expect(typeof refutationHint(pending, new Set())).toBe("string");
  });
});

describe("example table", () => {
  it("marks exactly the incident cells", () => {
    const rows = exampleRows(running);
    expect(rows).toEqual([
      { object: "1", cells: [true, false, false, true] },
      { object: "2", cells: [true, false, true, false] },
    ]);
  });
});
