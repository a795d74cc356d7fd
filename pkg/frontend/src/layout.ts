// Board geometry: circular layout by default, a few force-relaxation steps
// on request.  Pure functions so the renderer and tests share them.

export interface Point {
  x: number;
  y: number;
}

export function circularLayout(n: number, radius = 220, cx = 250, cy = 250): Point[] {
  const pts: Point[] = [];
  for (let i = 0; i < n; i++) {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    pts.push({ x: cx + radius * Math.cos(a), y: cy + radius * Math.sin(a) });
  }
  return pts;
}

export function forceLayout(
  n: number,
  edges: [number, number][],
  iterations = 60,
): Point[] {
  const pts = circularLayout(n);
  const k = 500 / Math.sqrt(Math.max(n, 1));
  for (let it = 0; it < iterations; it++) {
    const disp = pts.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const dx = pts[i].x - pts[j].x;
        const dy = pts[i].y - pts[j].y;
        const d = Math.max(Math.hypot(dx, dy), 1);
        const f = (k * k) / d / d;
        disp[i].x += dx * f;
        disp[i].y += dy * f;
        disp[j].x -= dx * f;
        disp[j].y -= dy * f;
      }
    }
    for (const [u, v] of edges) {
      const dx = pts[u].x - pts[v].x;
      const dy = pts[u].y - pts[v].y;
      const d = Math.max(Math.hypot(dx, dy), 1);
      const f = (d * d) / k / d / 80;
      disp[u].x -= dx * f;
      disp[u].y -= dy * f;
      disp[v].x += dx * f;
      disp[v].y += dy * f;
    }
    for (let i = 0; i < n; i++) {
      pts[i].x = Math.min(480, Math.max(20, pts[i].x + disp[i].x));
      pts[i].y = Math.min(480, Math.max(20, pts[i].y + disp[i].y));
    }
  }
  return pts;
}

// nearest edge to a click, within a pick radius; used for SVG hit testing
export function pickEdge(
  pts: Point[],
  edges: [number, number][],
  x: number,
  y: number,
  within = 8,
): number | null {
  let best: number | null = null;
  let bestD = within;
  edges.forEach(([u, v], i) => {
    const d = pointSegmentDistance(x, y, pts[u], pts[v]);
    if (d < bestD) {
      bestD = d;
      best = i;
    }
  });
  return best;
}

export function pointSegmentDistance(x: number, y: number, a: Point, b: Point): number {
  const vx = b.x - a.x;
  const vy = b.y - a.y;
  const len2 = vx * vx + vy * vy;
  const t = len2 === 0 ? 0 : Math.min(1, Math.max(0, ((x - a.x) * vx + (y - a.y) * vy) / len2));
  return Math.hypot(x - (a.x + t * vx), y - (a.y + t * vy));
}

// overlay path as a list of edge indices into the board's edge list
export function overlayEdgeIds(
  overlay: number[],
  edgeIndex: Map<string, number>,
): number[] {
  const out: number[] = [];
  for (let i = 0; i + 1 < overlay.length; i++) {
    const a = Math.min(overlay[i], overlay[i + 1]);
    const b = Math.max(overlay[i], overlay[i + 1]);
    const id = edgeIndex.get(`${a}-${b}`);
    if (id !== undefined) out.push(id);
  }
  return out;
}

export function edgeIndexMap(edges: [number, number][]): Map<string, number> {
  const m = new Map<string, number>();
  edges.forEach(([u, v], i) => m.set(`${u}-${v}`, i));
  return m;
}
