import { ApiError, SessionClient } from "./api";
import { exampleRows, formatImplication, questionPanel, refutationHint } from "./model";
import { layoutLattice } from "./layout";
import type { LatticeView, SessionView } from "./types";

const client = new SessionClient("");

const el = (id: string) => document.getElementById(id) as HTMLElement;

let current: SessionView | null = null;
let rejectOpen = false;

function setError(message: string | null): void {
  const box = el("error");
  box.textContent = message ?? "";
  box.style.display = message ? "block" : "none";
}

function humanError(e: unknown): string {
  if (e instanceof ApiError) {
    const texts: Record<string, string> = {
      VIOLATES_ACCEPTED: "the object contradicts an implication you already accepted",
      DOES_NOT_REFUTE: "the object does not refute the current question",
      DUPLICATE_OBJECT: "an object with this name already exists",
      SESSION_FINISHED: "the session is already finished",
    };
    // the server detail names the offending implication; keep it visible
    return `${e.code}: ${e.detail || texts[e.code] || ""}`;
  }
  return String(e);
}

async function refresh(): Promise<void> {
  if (!current) return;
  current = await client.get(current.id);
  const lattice = await client.lattice(current.id);
  render(current, lattice);
}

function render(view: SessionView, lattice: LatticeView): void {
  el("session").style.display = "block";
  el("starter").style.display = "none";
  renderQuestion(view);
  renderBasis(view);
  renderExamples(view);
  renderLattice(lattice);
}

function renderQuestion(view: SessionView): void {
  const panel = questionPanel(view);
  const box = el("question");
  box.innerHTML = "";
  if (panel.kind === "summary") {
    const head = document.createElement("h2");
    head.textContent = "Exploration finished";
    const list = document.createElement("ul");
    for (const line of panel.basis) {
      const item = document.createElement("li");
      item.textContent = line;
      list.append(item);
    }
    box.append(head, list);
    return;
  }
  const text = document.createElement("p");
  text.className = "question-text";
  text.textContent = panel.text;
  const accept = document.createElement("button");
  accept.textContent = "Accept";
  accept.onclick = async () => {
    setError(null);
    try {
      if (current) await client.answer(current.id, { kind: "accept" });
      rejectOpen = false;
      await refresh();
    } catch (e) {
      setError(humanError(e));
    }
  };
  const reject = document.createElement("button");
  reject.textContent = "Reject…";
  reject.onclick = () => {
    rejectOpen = !rejectOpen;
    renderQuestion(view);
  };
  box.append(text, accept, reject);
  if (rejectOpen && view.pending) {
    box.append(renderCounterexampleForm(view));
  }
}

function renderCounterexampleForm(view: SessionView): HTMLElement {
  const pending = view.pending!;
  const form = document.createElement("div");
  form.className = "counterexample";
  const name = document.createElement("input");
  name.placeholder = "new object name";
  const hint = document.createElement("p");
  hint.className = "hint";
  const checked = new Set<string>();
  const updateHint = () => {
    hint.textContent = refutationHint(pending, checked) ?? "";
  };
  const checklist = document.createElement("div");
  for (const attr of view.attributes) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.onchange = () => {
      if (box.checked) checked.add(attr);
      else checked.delete(attr);
      updateHint();
    };
    label.append(box, document.createTextNode(attr));
    checklist.append(label);
  }
  const submit = document.createElement("button");
  submit.textContent = "Submit counterexample";
  submit.onclick = async () => {
    setError(null);
    try {
      if (current) {
        await client.answer(current.id, {
          kind: "reject",
          object: name.value.trim(),
          intent: [...checked].sort(),
        });
      }
      rejectOpen = false;
      await refresh();
    } catch (e) {
      setError(humanError(e));  // hints never block; the server decides
    }
  };
  updateHint();
  form.append(name, checklist, hint, submit);
  return form;
}

function renderBasis(view: SessionView): void {
  const list = el("basis");
  list.innerHTML = "";
  for (const imp of view.accepted) {
    const item = document.createElement("li");
    item.textContent = formatImplication(imp);
    list.append(item);
  }
}

function renderExamples(view: SessionView): void {
  const table = el("examples") as HTMLTableElement;
  table.innerHTML = "";
  const head = table.insertRow();
  head.insertCell().textContent = "";
  for (const m of view.attributes) head.insertCell().textContent = m;
  for (const row of exampleRows(view)) {
    const tr = table.insertRow();
    tr.insertCell().textContent = row.object;
    for (const cell of row.cells) tr.insertCell().textContent = cell ? "×" : "";
  }
}

function renderLattice(lattice: LatticeView): void {
  const svg = el("lattice");
  const layout = layoutLattice(lattice);
  const width = 560;
  const height = 80 + layout.maxRank * 90;
  const px = (x: number) => 40 + x * (width - 80);
  const py = (rank: number) => height - 40 - rank * 90;
  const parts: string[] = [];
  for (const [lower, upper] of layout.covers) {
    parts.push(`<line x1="${px(layout.nodes[lower].x)}" y1="${py(layout.nodes[lower].rank)}" ` +
               `x2="${px(layout.nodes[upper].x)}" y2="${py(layout.nodes[upper].rank)}" class="edge"/>`);
  }
  layout.nodes.forEach((node) => {
    parts.push(`<circle cx="${px(node.x)}" cy="${py(node.rank)}" r="7" class="node"/>`);
    if (node.label) {
      parts.push(`<text x="${px(node.x) + 10}" y="${py(node.rank) - 8}">${node.label}</text>`);
    }
  });
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.innerHTML = parts.join("");
}

async function start(): Promise<void> {
  setError(null);
  const raw = (el("attributes-input") as HTMLInputElement).value;
  const attributes = raw.split(",").map((s) => s.trim()).filter((s) => s.length > 0);
  try {
    const created = await client.create(attributes);
    current = await client.get(created.id);
    await refresh();
  } catch (e) {
    setError(humanError(e));
  }
}

window.addEventListener("DOMContentLoaded", () => {
  (el("start-button") as HTMLButtonElement).onclick = () => void start();
});
