// Page wiring: pick a preset and a side, then play against the engine.
// Threat overlays and the winner prognosis refresh after every full round.

import { BoardDocument, ServiceClient, ServiceHttpError, Side, Verdict } from './api.js';
import { forceLayout, LayoutPoint } from './layout.js';
import { computeOverlays } from './overlay.js';
import { renderBoard } from './render.js';
import { GameSession } from './session.js';

const PRESETS = ['nunchaku4', 'two-disjoint-edges', 'necklace4', 'smallest-unmarked-win'];

function byId<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

class App {
  client = new ServiceClient(byId<HTMLInputElement>('service-url').value);
  session: GameSession | null = null;
  layout: LayoutPoint[] = [];
  busy = false;

  svg = byId<HTMLElement>('board') as unknown as SVGSVGElement;
  status = byId<HTMLDivElement>('status');
  threatsPanel = byId<HTMLUListElement>('threats');
  whatIfPanel = byId<HTMLDivElement>('whatif');

  async start(): Promise<void> {
    const select = byId<HTMLSelectElement>('preset');
    select.replaceChildren(
      ...PRESETS.map((p) => {
        const o = document.createElement('option');
        o.value = o.textContent = p;
        return o;
      }),
    );
    byId<HTMLButtonElement>('new-game').addEventListener('click', () => this.newGame());
    await this.newGame();
  }

  async newGame(): Promise<void> {
    const preset = byId<HTMLSelectElement>('preset').value || PRESETS[0];
    const side = byId<HTMLSelectElement>('side').value as Side;
    this.client = new ServiceClient(byId<HTMLInputElement>('service-url').value);
    const board = (await (await fetch(`presets/${preset}.json`)).json()) as BoardDocument;
    this.session = await GameSession.load(this.client, board, side);
    this.layout = forceLayout(this.session.view.vertices, this.session.view.edges, {
      width: this.svg.clientWidth || 760,
      height: this.svg.clientHeight || 520,
    });
    await this.session.refresh();
    this.draw();
    if (!this.session.humanTurn) await this.engineTurn();
  }

  async engineTurn(): Promise<void> {
    const s = this.session;
    if (!s || s.view.game_over || s.humanTurn || this.busy) return;
    this.busy = true;
    this.draw();
    try {
      const move = await s.playEngine();
      await s.refresh();
      this.say(`engine plays ${move.vertex} (${move.rationale})`);
    } finally {
      this.busy = false;
    }
    this.draw();
    if (s.view.game_over) this.finish();
  }

  async humanMove(vertex: string): Promise<void> {
    const s = this.session;
    if (!s || this.busy || !s.humanTurn) return;
    if (!s.isLegal(vertex)) {
      this.say(`${vertex} is not a legal move`);
      return;
    }
    try {
      await s.playHuman(vertex);
    } catch (err) {
      if (err instanceof ServiceHttpError && err.status === 409) {
        this.say(`rejected: ${err.message}`);
        return;
      }
      throw err;
    }
    await s.refresh();
    this.draw();
    if (s.view.game_over) {
      this.finish();
      return;
    }
    await this.engineTurn();
  }

  async hover(vertex: string | null): Promise<void> {
    const s = this.session;
    if (!s || vertex === null || !s.humanTurn || !s.isLegal(vertex)) {
      this.whatIfPanel.textContent = '';
      return;
    }
    this.whatIfPanel.textContent = `what if ${vertex}? ...`;
    try {
      const v: Verdict = await s.whatIf(vertex);
      this.whatIfPanel.textContent =
        `what if ${vertex}? -> ${v.winner} wins` +
        (v.tau_exact !== null ? ` in ${v.tau_exact} rounds` : '');
    } catch {
      this.whatIfPanel.textContent = '';
    }
  }

  finish(): void {
    const s = this.session!;
    const makerWon = s.threats.some((t) => t.kind === 'fully_marked_edge');
    this.say(makerWon ? 'Maker completed an edge.' : 'Breaker survives: no edge can be completed.');
  }

  say(text: string): void {
    const s = this.session;
    const bits = [text];
    if (s && !s.view.game_over) {
      bits.push(`to move: ${s.view.to_move}`);
      if (s.verdict) {
        bits.push(
          `prognosis: ${s.verdict.winner}` +
            (s.verdict.tau_exact !== null ? ` (tau ${s.verdict.tau_exact})` : ''),
        );
      }
    }
    this.status.textContent = bits.join(' — ');
  }

  draw(): void {
    const s = this.session;
    if (!s) return;
    const overlays = computeOverlays(s.threats);
    renderBoard(
      this.svg,
      s.view,
      this.layout,
      overlays,
      {
        onVertexClick: (name) => void this.humanMove(name),
        onVertexHover: (name) => void this.hover(name),
        onVertexDrag: (name, x, y) => {
          const p = this.layout.find((q) => q.name === name);
          if (p) {
            p.x = x;
            p.y = y;
            this.draw();
          }
        },
      },
      (name) => s.humanTurn && s.isLegal(name),
    );
    this.threatsPanel.replaceChildren(
      ...overlays.map((o) => {
        const li = document.createElement('li');
        li.className = o.colorClass;
        li.textContent = `${o.kind} [${o.witnessId}]: ${o.vertices.join(' ')}`;
        return li;
      }),
    );
  }
}

window.addEventListener('DOMContentLoaded', () => {
  void new App().start();
});
