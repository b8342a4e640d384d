// Deterministic force-directed placement. Pure math, no DOM: hyperedges act
// as springs between their members, all vertex pairs repel, and a seeded
// start keeps layouts reproducible across reloads.

export interface LayoutPoint {
  name: string;
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  spring?: number;
  repulsion?: number;
}

function hash(text: string): number {
  let h = 2166136261;
  for (let i = 0; i < text.length; i++) {
    h = Math.imul(h ^ text.charCodeAt(i), 16777619);
  }
  return (h >>> 0) / 4294967295;
}

export function forceLayout(
  vertices: string[],
  edges: string[][],
  opts: LayoutOptions,
): LayoutPoint[] {
  const { width, height } = opts;
  const iterations = opts.iterations ?? 250;
  const spring = opts.spring ?? 0.02;
  const repulsion = opts.repulsion ?? 0.9;
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.38;

  const pts = vertices.map((name, i) => {
    const angle = 2 * Math.PI * (i / Math.max(1, vertices.length)) + hash(name) * 0.7;
    return {
      name,
      x: cx + radius * Math.cos(angle) * (0.7 + 0.3 * hash(name + '.r')),
      y: cy + radius * Math.sin(angle) * (0.7 + 0.3 * hash(name + '.s')),
    };
  });
  const index = new Map(pts.map((p, i) => [p.name, i]));
  const ideal = radius * 0.9;

  for (let it = 0; it < iterations; it++) {
    const fx = new Array(pts.length).fill(0);
    const fy = new Array(pts.length).fill(0);
    for (let i = 0; i < pts.length; i++) {
      for (let j = i + 1; j < pts.length; j++) {
        const dx = pts[i].x - pts[j].x;
        const dy = pts[i].y - pts[j].y;
        const d2 = Math.max(25, dx * dx + dy * dy);
        const f = (repulsion * ideal * ideal) / d2 / Math.sqrt(d2);
        fx[i] += dx * f;
        fy[i] += dy * f;
        fx[j] -= dx * f;
        fy[j] -= dy * f;
      }
    }
    for (const e of edges) {
      for (let a = 0; a < e.length; a++) {
        for (let b = a + 1; b < e.length; b++) {
          const i = index.get(e[a])!;
          const j = index.get(e[b])!;
          const dx = pts[j].x - pts[i].x;
          const dy = pts[j].y - pts[i].y;
          fx[i] += dx * spring;
          fy[i] += dy * spring;
          fx[j] -= dx * spring;
          fy[j] -= dy * spring;
        }
      }
    }
    const cool = 1 - it / iterations;
    for (let i = 0; i < pts.length; i++) {
      pts[i].x += Math.max(-12, Math.min(12, fx[i])) * cool;
      pts[i].y += Math.max(-12, Math.min(12, fy[i])) * cool;
      pts[i].x = Math.max(24, Math.min(width - 24, pts[i].x));
      pts[i].y = Math.max(24, Math.min(height - 24, pts[i].y));
    }
  }
  return pts;
}
