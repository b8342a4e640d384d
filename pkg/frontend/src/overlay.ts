// Threat overlays are a 1:1 rendering of the witnesses the service reports;
// nothing is recomputed client-side, so overlay ids always match witness ids.

import { ThreatInfo } from './api.js';

export interface Overlay {
  witnessId: string;
  kind: string;
  vertices: string[];
  edgeKeys: string[];
  colorClass: string;
}

export function edgeKey(edge: string[]): string {
  return [...edge].sort().join('|');
}

const KIND_CLASS: Record<string, string> = {
  fully_marked_edge: 'overlay-won',
  nunchaku: 'overlay-nunchaku',
  necklace: 'overlay-necklace',
  snake: 'overlay-snake',
};

export function computeOverlays(threats: ThreatInfo[]): Overlay[] {
  return threats.map((t) => ({
    witnessId: t.id,
    kind: t.kind,
    vertices: [...t.vertices].sort(),
    edgeKeys: t.edges.map(edgeKey),
    colorClass: KIND_CLASS[t.kind] ?? 'overlay-other',
  }));
}
