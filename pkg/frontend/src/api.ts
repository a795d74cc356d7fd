// Thin client over the session service: plain fetch plus a minimal SSE
// reader built on streaming fetch so it behaves the same in the browser and
// under node --test.

import { Delta, Snapshot } from "./state.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public reason: string,
  ) {
    super(`HTTP ${status}: ${reason}`);
  }
}

async function asJson(resp: Response): Promise<any> {
  const obj = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    throw new ApiError(resp.status, obj.reason ?? obj.error ?? resp.statusText);
  }
  return obj;
}

export interface CreatePayload {
  graph: { n: number; edges: [number, number][] };
  bias: [number, number];
  human_role: "Maker" | "Breaker";
  engine: string;
  first?: "Maker" | "Breaker";
}

export class Client {
  constructor(public base: string) {}

  async createGame(payload: CreatePayload): Promise<Snapshot> {
    const resp = await fetch(`${this.base}/games`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    return asJson(resp);
  }

  async getGame(id: string): Promise<Snapshot> {
    return asJson(await fetch(`${this.base}/games/${id}`));
  }

  async postMoves(id: string, elements: number[]): Promise<Snapshot> {
    const resp = await fetch(`${this.base}/games/${id}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ elements }),
    });
    return asJson(resp);
  }

  async deleteGame(id: string): Promise<void> {
    await asJson(await fetch(`${this.base}/games/${id}`, { method: "DELETE" }));
  }

  // Consume the SSE stream, invoking onDelta per event; resolves when the
  // server closes the stream (game over or session deleted).
  async stream(
    id: string,
    onDelta: (d: Delta) => void,
    signal?: AbortSignal,
  ): Promise<void> {
    const resp = await fetch(`${this.base}/games/${id}/stream`, { signal });
    if (!resp.ok || !resp.body) {
      throw new ApiError(resp.status, "stream unavailable");
    }
    const reader = resp.body.getReader();
    const decoder = new TextDecoder();
    let buf = "";
    for (;;) {
      const { value, done } = await reader.read();
      if (done) break;
      buf += decoder.decode(value, { stream: true });
      let idx;
      while ((idx = buf.indexOf("\n\n")) >= 0) {
        const raw = buf.slice(0, idx);
        buf = buf.slice(idx + 2);
        if (raw.startsWith("data: ")) {
          onDelta(JSON.parse(raw.slice(6)));
        }
      }
    }
  }
}

export function completeGraphPayload(n: number): { n: number; edges: [number, number][] } {
  const edges: [number, number][] = [];
  for (let u = 0; u < n; u++) {
    for (let v = u + 1; v < n; v++) edges.push([u, v]);
  }
  return { n, edges };
}
