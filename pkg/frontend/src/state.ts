// Client-side session state: mirrors the server snapshot, applies stream
// deltas, recomputes the canonical state hash, and validates human batches
// before they ever hit the network.

import { sha256Hex } from "./sha256.js";

export type Role = "Maker" | "Breaker";

export interface Snapshot {
  id: string;
  n: number;
  edges: [number, number][];
  bias: [number, number];
  human_role: Role;
  engine: string;
  maker: number[];
  breaker: number[];
  to_move: Role | "over";
  ply: number;
  winner: Role | null;
  certificate: number[] | null;
  state_hash: string;
  maker_path_overlay: number[];
}

export interface Delta {
  ply: number;
  player: Role;
  elements: number[];
  state_hash: string;
  maker_path_overlay?: number[];
  winner?: Role;
  certificate?: number[];
  potential?: number;
}

export type EdgeState = "unclaimed" | "maker" | "breaker" | "pending";

export interface SessionView {
  id: string;
  n: number;
  edges: [number, number][];
  bias: [number, number];
  humanRole: Role;
  maker: Set<number>;
  breaker: Set<number>;
  pending: Set<number>;
  toMove: Role | "over";
  ply: number;
  winner: Role | null;
  certificate: number[] | null;
  overlay: number[];
  potentials: number[];
  moveLog: { ply: number; player: Role; elements: number[] }[];
  lastHash: string;
}

export function fromSnapshot(snap: Snapshot): SessionView {
  return {
    id: snap.id,
    n: snap.n,
    edges: snap.edges,
    bias: snap.bias,
    humanRole: snap.human_role,
    maker: new Set(snap.maker),
    breaker: new Set(snap.breaker),
    pending: new Set(),
    toMove: snap.to_move,
    ply: snap.ply,
    winner: snap.winner,
    certificate: snap.certificate,
    overlay: snap.maker_path_overlay ?? [],
    potentials: [],
    moveLog: [],
    lastHash: snap.state_hash,
  };
}

// The canonical serialization matches the server byte for byte:
// {"bias":[m,b],"breaker":[...sorted],"maker":[...sorted],"ply":N,
//  "to_move":"Maker"|"Breaker"|"over"}
export function canonicalState(view: {
  bias: [number, number];
  maker: Iterable<number>;
  breaker: Iterable<number>;
  ply: number;
  toMove: string;
}): string {
  const maker = [...view.maker].sort((a, b) => a - b);
  const breaker = [...view.breaker].sort((a, b) => a - b);
  return (
    `{"bias":[${view.bias[0]},${view.bias[1]}],` +
    `"breaker":[${breaker.join(",")}],` +
    `"maker":[${maker.join(",")}],` +
    `"ply":${view.ply},` +
    `"to_move":"${view.toMove}"}`
  );
}

export function stateHash(view: {
  bias: [number, number];
  maker: Iterable<number>;
  breaker: Iterable<number>;
  ply: number;
  toMove: string;
}): string {
  return sha256Hex(canonicalState(view));
}

export class HashMismatchError extends Error {
  constructor(expected: string, got: string) {
    super(`state hash mismatch: server ${expected}, client ${got}`);
  }
}

// Apply one stream delta; throws HashMismatchError when the recomputed
// canonical hash disagrees with the server's.
export function applyDelta(view: SessionView, delta: Delta): SessionView {
  const target = delta.player === "Maker" ? view.maker : view.breaker;
  for (const e of delta.elements) {
    target.add(e);
    view.pending.delete(e);
  }
  view.ply = delta.ply;
  if (delta.winner) {
    view.winner = delta.winner;
    view.certificate = delta.certificate ?? null;
    view.toMove = "over";
  } else {
    view.toMove = delta.player === "Maker" ? "Breaker" : "Maker";
  }
  if (delta.maker_path_overlay) view.overlay = delta.maker_path_overlay;
  if (delta.potential !== undefined) view.potentials.push(delta.potential);
  view.moveLog.push({ ply: delta.ply, player: delta.player, elements: delta.elements });
  const got = stateHash(view);
  if (got !== delta.state_hash) {
    throw new HashMismatchError(delta.state_hash, got);
  }
  view.lastHash = got;
  return view;
}

export function edgeState(view: SessionView, e: number): EdgeState {
  if (view.maker.has(e)) return "maker";
  if (view.breaker.has(e)) return "breaker";
  if (view.pending.has(e)) return "pending";
  return "unclaimed";
}

export function perTurn(view: SessionView, role: Role): number {
  return role === "Maker" ? view.bias[0] : view.bias[1];
}

export function unclaimedCount(view: SessionView): number {
  return view.edges.length - view.maker.size - view.breaker.size;
}

export interface BatchVerdict {
  ok: boolean;
  reason?: "turn" | "count" | "claimed" | "over";
  needed?: number;
}

// Mirror of the server's move validation, run before submission.
export function validateBatch(view: SessionView, elements: number[]): BatchVerdict {
  if (view.winner) return { ok: false, reason: "over" };
  if (view.toMove !== view.humanRole) return { ok: false, reason: "turn" };
  const needed = Math.min(perTurn(view, view.humanRole), unclaimedCount(view));
  if (elements.length !== needed || new Set(elements).size !== elements.length) {
    return { ok: false, reason: "count", needed };
  }
  for (const e of elements) {
    if (view.maker.has(e) || view.breaker.has(e)) {
      return { ok: false, reason: "claimed" };
    }
  }
  return { ok: true, needed };
}

// Parse a pasted edge list ("u v" per line or "u-v, u-v") into a graph
// payload; rejects loops, duplicates and boards beyond the soft cap.
export const MAX_BOARD_N = 40;

export function parseEdgeList(text: string): { n: number; edges: [number, number][] } {
  const pairs: [number, number][] = [];
  const seen = new Set<string>();
  let maxV = -1;
  for (const tok of text.split(/[\n,;]+/)) {
    const t = tok.trim();
    if (!t) continue;
    const m = t.split(/[\s-]+/).map(Number);
    if (m.length !== 2 || m.some((x) => !Number.isInteger(x) || x < 0)) {
      throw new Error(`bad edge ${JSON.stringify(t)}`);
    }
    const [a, b] = m[0] < m[1] ? [m[0], m[1]] : [m[1], m[0]];
    if (a === b) throw new Error(`self-loop at ${a}`);
    const key = `${a}-${b}`;
    if (seen.has(key)) throw new Error(`duplicate edge ${key}`);
    seen.add(key);
    pairs.push([a, b]);
    maxV = Math.max(maxV, b);
  }
  if (!pairs.length) throw new Error("no edges given");
  const n = maxV + 1;
  if (n > MAX_BOARD_N) throw new Error(`board too large: n=${n} > ${MAX_BOARD_N}`);
  return { n, edges: pairs };
}
