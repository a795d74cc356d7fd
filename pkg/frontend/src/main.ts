// Browser entry point: session setup form, click-to-select edge batches,
// optimistic pending state with server reconciliation, stream-driven board
// updates with per-delta hash checks, overlays and the win/loss banner.

import { ApiError, Client, completeGraphPayload } from "./api.js";
import { edgeVisuals, layoutFor, renderBoard } from "./board.js";
import { edgeIndexMap, overlayEdgeIds } from "./layout.js";
import {
  Delta,
  HashMismatchError,
  MAX_BOARD_N,
  Role,
  SessionView,
  applyDelta,
  fromSnapshot,
  parseEdgeList,
  perTurn,
  unclaimedCount,
  validateBatch,
} from "./state.js";

const $ = (id: string) => document.getElementById(id)!;

let client: Client;
let view: SessionView | null = null;
let selected = new Set<number>();
let lastMove = new Set<number>();
let overlayOn = true;
let layoutMode: "circle" | "force" = "circle";
let streamAbort: AbortController | null = null;

function status(msg: string, isError = false): void {
  const el = $("status");
  el.textContent = msg;
  el.className = isError ? "error" : "";
}

function banner(): void {
  const el = $("banner");
  if (!view || !view.winner) {
    el.textContent = "";
    el.className = "";
    return;
  }
  const humanWon = view.winner === view.humanRole;
  el.textContent = `${view.winner} wins${humanWon ? " - that's you!" : ""}`;
  el.className = view.winner === "Maker" ? "banner maker" : "banner breaker";
}

function redraw(): void {
  if (!view) return;
  const pts = layoutFor(view, layoutMode);
  const eidx = edgeIndexMap(view.edges);
  const overlay = overlayOn ? new Set(overlayEdgeIds(view.overlay, eidx)) : new Set<number>();
  const visuals = edgeVisuals(view, pts, selected, overlay, lastMove);
  renderBoard($("board") as unknown as SVGSVGElement, view, pts, visuals, onEdgeClick);
  const need = view.winner ? 0 : Math.min(perTurn(view, view.humanRole), unclaimedCount(view));
  $("turn").textContent = view.winner
    ? "game over"
    : view.toMove === view.humanRole
      ? `your turn (${view.humanRole}): pick ${need} edge${need === 1 ? "" : "s"}`
      : `engine thinking (${view.toMove})`;
  $("counter").textContent = `selected ${selected.size}/${need} - bias ${view.bias[0]}:${view.bias[1]} - ply ${view.ply}`;
  const submit = $("submit") as HTMLButtonElement;
  submit.disabled = !view || view.winner !== null || selected.size !== need || need === 0;
  banner();
}

function onEdgeClick(id: number): void {
  if (!view || view.winner || view.toMove !== view.humanRole) return;
  if (view.maker.has(id) || view.breaker.has(id)) {
    status("that edge is already claimed", true);
    return;
  }
  if (selected.has(id)) selected.delete(id);
  else selected.add(id);
  redraw();
}

async function refetch(): Promise<void> {
  if (!view) return;
  const snap = await client.getGame(view.id);
  view = fromSnapshot(snap);
  selected = new Set();
  redraw();
}

function onDelta(delta: Delta): void {
  if (!view) return;
  try {
    applyDelta(view, delta);
    lastMove = new Set(
      delta.elements
        .map((e) => e)
        .filter(() => true),
    );
    redraw();
  } catch (err) {
    if (err instanceof HashMismatchError) {
      status(`${err.message} - refetching`, true);
      void refetch();
    } else {
      throw err;
    }
  }
}

async function submitBatch(): Promise<void> {
  if (!view) return;
  const batch = [...selected].sort((a, b) => a - b);
  const verdict = validateBatch(view, batch);
  if (!verdict.ok) {
    status(`blocked client-side: ${verdict.reason}`, true);
    return;
  }
  batch.forEach((e) => view!.pending.add(e));
  selected = new Set();
  redraw();
  try {
    await client.postMoves(view.id, batch);
    status("move accepted");
  } catch (err) {
    batch.forEach((e) => view!.pending.delete(e));
    if (err instanceof ApiError && err.status === 409) {
      status(`server rejected (${err.reason}) - view refreshed`, true);
      await refetch();
    } else {
      status(String(err), true);
    }
  }
  redraw();
}

async function createGame(): Promise<void> {
  streamAbort?.abort();
  const base = ($("server") as HTMLInputElement).value.replace(/\/$/, "");
  client = new Client(base);
  const kind = ($("graphkind") as HTMLSelectElement).value;
  let graph;
  try {
    if (kind === "complete") {
      const n = parseInt(($("nvertices") as HTMLInputElement).value, 10);
      if (!(n >= 3 && n <= MAX_BOARD_N)) throw new Error(`n must be 3..${MAX_BOARD_N}`);
      graph = completeGraphPayload(n);
    } else {
      graph = parseEdgeList(($("edgelist") as HTMLTextAreaElement).value);
    }
  } catch (err) {
    status(`graph: ${err}`, true);
    return;
  }
  const b = parseInt(($("bias") as HTMLInputElement).value, 10);
  if (!(b >= 1)) {
    status("bias must be a positive integer", true);
    return;
  }
  const role = ($("role") as HTMLSelectElement).value as Role;
  try {
    const snap = await client.createGame({
      graph,
      bias: [1, b],
      human_role: role,
      engine: "dirac",
    });
    view = fromSnapshot(snap);
    selected = new Set();
    lastMove = new Set();
    status(`session ${snap.id.slice(0, 8)} created`);
    redraw();
    streamAbort = new AbortController();
    void client
      .stream(snap.id, onDelta, streamAbort.signal)
      .catch((err) => {
        if (!(err instanceof DOMException)) status(String(err), true);
      });
  } catch (err) {
    status(`create failed: ${err}`, true);
  }
}

function wire(): void {
  $("create").addEventListener("click", () => void createGame());
  $("submit").addEventListener("click", () => void submitBatch());
  $("overlaytoggle").addEventListener("change", (ev) => {
    overlayOn = (ev.target as HTMLInputElement).checked;
    redraw();
  });
  $("layout").addEventListener("change", (ev) => {
    layoutMode = (ev.target as HTMLSelectElement).value as "circle" | "force";
    redraw();
  });
  $("graphkind").addEventListener("change", (ev) => {
    const custom = (ev.target as HTMLSelectElement).value === "custom";
    ($("edgelist") as HTMLTextAreaElement).style.display = custom ? "block" : "none";
    ($("nvertices") as HTMLInputElement).style.display = custom ? "none" : "inline";
  });
}

if (typeof document !== "undefined" && document.getElementById("board")) {
  wire();
}
