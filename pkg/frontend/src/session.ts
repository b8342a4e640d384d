// Game session state. A thin mirror of the service's position resource:
// the only client-side rule knowledge is the legality pre-check, which must
// stay sound with respect to the service (tested against a full board scan).

import {
  BoardDocument,
  EngineInfo,
  PositionView,
  ServiceClient,
  Side,
  ThreatInfo,
  Verdict,
} from './api.js';

export class GameSession {
  private constructor(
    readonly client: ServiceClient,
    readonly sessionId: string,
    readonly originalBoard: BoardDocument,
    readonly humanSide: Side,
    public view: PositionView,
  ) {}

  public verdict: Verdict | null = null;
  public lastEngine: EngineInfo | null = null;

  static async load(
    client: ServiceClient,
    board: BoardDocument,
    humanSide: Side,
  ): Promise<GameSession> {
    const res = await client.load(board);
    const { session, ...view } = res;
    return new GameSession(client, session, board, humanSide, view as PositionView);
  }

  get threats(): ThreatInfo[] {
    return this.view.threats;
  }

  get humanTurn(): boolean {
    return !this.view.game_over && this.view.to_move === this.humanSide;
  }

  /** Legality mirror: present, not marked, game running, and Breaker may not
   * take the sole remaining vertex. Must never approve a move the service
   * would reject. */
  isLegal(vertex: string): boolean {
    if (this.view.game_over) return false;
    if (!this.view.vertices.includes(vertex)) return false;
    if (this.view.marked.includes(vertex)) return false;
    if (this.view.to_move === 'breaker' && this.view.vertices.length === 1) return false;
    return true;
  }

  legalMoves(): string[] {
    return this.view.vertices.filter((v) => this.isLegal(v));
  }

  async playHuman(vertex: string): Promise<void> {
    this.view = await this.client.move(this.sessionId, vertex);
    this.lastEngine = null;
  }

  async playEngine(): Promise<EngineInfo> {
    const res = await this.client.engineMove(this.sessionId);
    const { engine, ...view } = res;
    this.view = view as PositionView;
    this.lastEngine = engine;
    return engine;
  }

  async refresh(): Promise<void> {
    this.view = await this.client.position(this.sessionId);
    this.verdict = this.view.game_over ? null : await this.client.decide(this.sessionId);
  }

  lastMove(): string | null {
    const h = this.view.history;
    return h.length ? h[h.length - 1][1] : null;
  }

  /** Verdict of the child position after a candidate move, computed purely
   * through the service: replay this game's history plus the candidate on a
   * scratch session. */
  async whatIf(vertex: string): Promise<Verdict> {
    const scratch = await this.client.load(this.originalBoard);
    for (const [, v] of this.view.history) {
      await this.client.move(scratch.session, v);
    }
    await this.client.move(scratch.session, vertex);
    return this.client.decide(scratch.session);
  }
}
