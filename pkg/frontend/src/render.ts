// SVG board rendering: hyperedges as padded hulls around their three
// vertices, marked vertices circled, threat overlays highlighted. The DOM
// work stays here so everything else remains headless-testable.

import { PositionView } from './api.js';
import { LayoutPoint } from './layout.js';
import { Overlay, edgeKey } from './overlay.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface RenderHandlers {
  onVertexClick?: (name: string) => void;
  onVertexHover?: (name: string | null) => void;
  onVertexDrag?: (name: string, x: number, y: number) => void;
}

const EDGE_HUES = [205, 150, 28, 282, 340, 95, 180, 250, 60, 320];

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, String(v));
  }
  return node;
}

function hullPath(points: { x: number; y: number }[]): string {
  const path = points.map((p, i) => `${i ? 'L' : 'M'}${p.x} ${p.y}`).join(' ');
  return `${path} Z`;
}

export function renderBoard(
  svg: SVGSVGElement,
  view: PositionView,
  layout: LayoutPoint[],
  overlays: Overlay[],
  handlers: RenderHandlers,
  legal: (name: string) => boolean,
): void {
  svg.replaceChildren();
  const pos = new Map(layout.map((p) => [p.name, p]));
  const overlayEdges = new Map<string, Overlay>();
  const overlayVertices = new Set<string>();
  for (const o of overlays) {
    for (const k of o.edgeKeys) overlayEdges.set(k, o);
    for (const v of o.vertices) overlayVertices.add(v);
  }

  view.edges.forEach((edge, i) => {
    const pts = edge.map((v) => pos.get(v)!).filter(Boolean);
    if (pts.length < 2) return;
    const overlay = overlayEdges.get(edgeKey(edge));
    const hue = EDGE_HUES[i % EDGE_HUES.length];
    const hull = el('path', {
      d: hullPath(pts),
      fill: `hsla(${hue}, 70%, 55%, ${overlay ? 0.38 : 0.16})`,
      stroke: overlay ? `hsl(${hue}, 85%, 40%)` : `hsl(${hue}, 45%, 55%)`,
      'stroke-width': overlay ? 26 : 20,
      'stroke-linejoin': 'round',
      class: overlay ? `edge ${overlay.colorClass}` : 'edge',
    });
    if (overlay) hull.dataset.witness = overlay.witnessId;
    svg.appendChild(hull);
  });

  const last = view.history.length ? view.history[view.history.length - 1][1] : null;
  for (const p of layout) {
    const marked = view.marked.includes(p.name);
    const group = el('g', { class: 'vertex', 'data-name': p.name });
    if (p.name === last) {
      group.appendChild(el('circle', { cx: p.x, cy: p.y, r: 17, class: 'last-move' }));
    }
    if (overlayVertices.has(p.name)) {
      group.appendChild(el('circle', { cx: p.x, cy: p.y, r: 14.5, class: 'threat-ring' }));
    }
    group.appendChild(
      el('circle', {
        cx: p.x,
        cy: p.y,
        r: 10,
        class: marked ? 'dot marked' : legal(p.name) ? 'dot open' : 'dot dead',
      }),
    );
    if (marked) {
      // circled, matching the convention for Maker's vertices
      group.appendChild(el('circle', { cx: p.x, cy: p.y, r: 13, class: 'mark-ring' }));
    }
    const label = el('text', { x: p.x, y: p.y + 26, class: 'label' });
    label.textContent = p.name;
    group.appendChild(label);

    group.addEventListener('click', () => handlers.onVertexClick?.(p.name));
    group.addEventListener('mouseenter', () => handlers.onVertexHover?.(p.name));
    group.addEventListener('mouseleave', () => handlers.onVertexHover?.(null));
    let dragging = false;
    group.addEventListener('pointerdown', (ev) => {
      dragging = true;
      (ev.target as Element).setPointerCapture?.(ev.pointerId);
    });
    group.addEventListener('pointermove', (ev) => {
      if (!dragging) return;
      const box = svg.getBoundingClientRect();
      handlers.onVertexDrag?.(p.name, ev.clientX - box.left, ev.clientY - box.top);
    });
    group.addEventListener('pointerup', () => {
      dragging = false;
    });
    svg.appendChild(group);
  }
}
