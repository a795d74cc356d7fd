// SVG board rendering.  The attribute computation is pure (testable); only
// `renderBoard` touches the DOM.

import { circularLayout, forceLayout, Point } from "./layout.js";
import { EdgeState, SessionView, edgeState } from "./state.js";

export interface EdgeVisual {
  id: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  state: EdgeState;
  selected: boolean;
  onOverlay: boolean;
  lastMove: boolean;
}

export const EDGE_COLORS: Record<EdgeState, string> = {
  unclaimed: "#b8b8b8",
  maker: "#d62728",
  breaker: "#1f77b4",
  pending: "#ff9f1c",
};

export function edgeVisuals(
  view: SessionView,
  pts: Point[],
  selected: Set<number>,
  overlayIds: Set<number>,
  lastMove: Set<number>,
): EdgeVisual[] {
  return view.edges.map(([u, v], i) => ({
    id: i,
    x1: pts[u].x,
    y1: pts[u].y,
    x2: pts[v].x,
    y2: pts[v].y,
    state: edgeState(view, i),
    selected: selected.has(i),
    onOverlay: overlayIds.has(i),
    lastMove: lastMove.has(i),
  }));
}

export function layoutFor(view: SessionView, mode: "circle" | "force"): Point[] {
  return mode === "force"
    ? forceLayout(view.n, view.edges)
    : circularLayout(view.n);
}

export function edgeWidth(vis: EdgeVisual): number {
  if (vis.onOverlay) return 5;
  if (vis.state !== "unclaimed") return 3;
  return 1.5;
}

export function renderBoard(
  svg: SVGSVGElement,
  view: SessionView,
  pts: Point[],
  visuals: EdgeVisual[],
  onEdgeClick: (id: number) => void,
): void {
  const NS = "http://www.w3.org/2000/svg";
  svg.innerHTML = "";
  for (const vis of visuals) {
    const line = document.createElementNS(NS, "line");
    line.setAttribute("x1", String(vis.x1));
    line.setAttribute("y1", String(vis.y1));
    line.setAttribute("x2", String(vis.x2));
    line.setAttribute("y2", String(vis.y2));
    line.setAttribute("stroke", vis.selected ? "#ff9f1c" : EDGE_COLORS[vis.state]);
    line.setAttribute("stroke-width", String(edgeWidth(vis)));
    if (vis.lastMove) line.setAttribute("stroke-dasharray", "6 3");
    if (vis.onOverlay) line.setAttribute("opacity", "0.95");
    line.style.cursor = vis.state === "unclaimed" ? "pointer" : "default";
    line.addEventListener("click", () => onEdgeClick(vis.id));
    svg.appendChild(line);
  }
  view.edges.forEach((_e, _i) => void 0);
  pts.forEach((p, v) => {
    const c = document.createElementNS(NS, "circle");
    c.setAttribute("cx", String(p.x));
    c.setAttribute("cy", String(p.y));
    c.setAttribute("r", "9");
    c.setAttribute("fill", "#222");
    svg.appendChild(c);
    const t = document.createElementNS(NS, "text");
    t.setAttribute("x", String(p.x));
    t.setAttribute("y", String(p.y + 4));
    t.setAttribute("text-anchor", "middle");
    t.setAttribute("fill", "#fff");
    t.setAttribute("font-size", "10");
    t.textContent = String(v);
    svg.appendChild(t);
  });
}
