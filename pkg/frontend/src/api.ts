// Typed client for the engine's HTTP/JSON API. All game truth comes from
// the service; the UI never recomputes game logic beyond the legality mirror.

export interface BoardDocument {
  vertices: string[];
  edges: string[][];
  marked: string[];
  metadata?: Record<string, unknown>;
}

export interface ThreatInfo {
  id: string;
  kind: 'fully_marked_edge' | 'nunchaku' | 'necklace' | 'snake' | string;
  vertices: string[];
  edges: string[][];
}

export type Side = 'maker' | 'breaker';

export interface PositionView {
  vertices: string[];
  edges: string[][];
  marked: string[];
  to_move: Side;
  history: [Side, string][];
  game_over: boolean;
  threats: ThreatInfo[];
}

export interface LoadResponse extends PositionView {
  session: string;
}

export interface EngineInfo {
  vertex: string;
  rationale: string;
}

export interface EngineMoveResponse extends PositionView {
  engine: EngineInfo;
}

export interface Verdict {
  winner: Side;
  best_move: string | null;
  tau_upper: number | null;
  tau_exact: number | null;
  certificate: string;
}

export interface LegalMoves {
  to_move: Side;
  moves: string[];
}

export class ServiceHttpError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

interface ErrorBody {
  error?: { code?: string; message?: string };
}

export class ServiceClient {
  constructor(readonly baseUrl: string) {}

  /** Transient network failures (service restart, dropped socket) get a
   * short backoff and retry before surfacing. */
  private async fetchWithRetry(path: string, init: RequestInit): Promise<Response> {
    let lastError: unknown;
    for (let attempt = 0; attempt < 3; attempt++) {
      try {
        return await fetch(this.baseUrl + path, init);
      } catch (err) {
        lastError = err;
        await new Promise((r) => setTimeout(r, 250 * (attempt + 1)));
      }
    }
    throw lastError;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await this.fetchWithRetry(path, {
      method,
      headers: body === undefined ? {} : { 'content-type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = (await res.json().catch(() => ({}))) as T & ErrorBody;
    if (!res.ok) {
      const err = payload.error ?? {};
      throw new ServiceHttpError(res.status, err.code ?? 'unknown', err.message ?? res.statusText);
    }
    return payload;
  }

  load(board: BoardDocument, uniform = false): Promise<LoadResponse> {
    return this.request('POST', '/position', { board, uniform });
  }

  position(session: string): Promise<PositionView> {
    return this.request('GET', `/position/${session}`);
  }

  move(session: string, vertex: string): Promise<PositionView> {
    return this.request('POST', `/position/${session}/move`, { vertex });
  }

  engineMove(session: string): Promise<EngineMoveResponse> {
    return this.request('POST', `/position/${session}/engine-move`);
  }

  decide(session: string): Promise<Verdict> {
    return this.request('GET', `/position/${session}/decide`);
  }

  tau(session: string): Promise<{ tau: number | null }> {
    return this.request('GET', `/position/${session}/tau`);
  }

  threats(session: string): Promise<{ threats: ThreatInfo[] }> {
    return this.request('GET', `/position/${session}/threats`);
  }

  legalMoves(session: string): Promise<LegalMoves> {
    return this.request('GET', `/position/${session}/legal-moves`);
  }

  reset(session: string): Promise<PositionView> {
    return this.request('POST', `/position/${session}/reset`);
  }
}
