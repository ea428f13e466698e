import type { Answer, LatticeView, SeedPayload, SessionView } from "./types";

/** Server-reported error: `code` is one of the wire error codes. */
export class ApiError extends Error {
  code: string;
  detail: string;

  constructor(code: string, detail: string) {
    super(`${code}: ${detail}`);
    this.code = code;
    this.detail = detail;
  }
}

async function parse<T>(response: Response): Promise<T> {
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(body.error ?? `HTTP_${response.status}`, body.detail ?? "");
  }
  return body as T;
}

/**
 * Thin typed client for the exploration session API.  The server is the
 * only authority on session state; this class never caches or infers.
 */
export class SessionClient {
  constructor(private base: string = "") {}

  async create(attributes: string[], seed?: SeedPayload):
      Promise<{ id: string; pending: ImplicationLike | null }> {
    const response = await fetch(`${this.base}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ attributes, seed: seed ?? null }),
    });
    return parse(response);
  }

  async get(id: string): Promise<SessionView> {
    return parse(await fetch(`${this.base}/sessions/${id}`));
  }

  async answer(id: string, answer: Answer): Promise<SessionView> {
    const response = await fetch(`${this.base}/sessions/${id}/answer`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(answer),
    });
    return parse(response);
  }

  async lattice(id: string): Promise<LatticeView> {
    return parse(await fetch(`${this.base}/sessions/${id}/lattice`));
  }
}

interface ImplicationLike {
  premise: string[];
  conclusion: string[];
}
