// Typed client for the nimcube JSON API. The UI never computes nim-sums or
// classifications itself; everything comes from these responses.

export type Classification = "P" | "N";
export type GameStatus = "in_progress" | "human_won" | "engine_won";
export type Turn = "human" | "engine";

export interface WireMove {
  pile_index: number;
  new_size: number;
}

export interface MoveView extends WireMove {
  position: number[];
  classification: Classification;
}

export interface SessionView {
  id: string;
  position: number[];
  to_move: Turn;
  status: GameStatus;
}

export interface CreateGameResponse extends SessionView {
  classification: Classification;
  engine_move: MoveView | null;
}

export interface MoveResponse extends SessionView {
  human_move: MoveView;
  engine_move: MoveView | null;
}

export interface HintResponse {
  classification: Classification;
  winning_moves: WireMove[];
}

export interface FractalResponse {
  d: number;
  n: number;
  count: number;
  points: number[][];
}

export class ApiError extends Error {
  constructor(readonly code: string, message: string, readonly status: number) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError("unreachable", `server unreachable: ${err}`, 0);
  }
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const code = body && typeof body.code === "string" ? body.code : "bad_request";
    const message = body && typeof body.message === "string"
      ? body.message : `HTTP ${response.status}`;
    throw new ApiError(code, message, response.status);
  }
  return body as T;
}

export class NimcubeApi {
  constructor(readonly baseUrl: string = "") {}

  createGame(piles: number[], humanFirst: boolean): Promise<CreateGameResponse> {
    return request(`${this.baseUrl}/games`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ piles, human_first: humanFirst }),
    });
  }

  submitMove(gameId: string, move: WireMove): Promise<MoveResponse> {
    return request(`${this.baseUrl}/games/${gameId}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(move),
    });
  }

  hint(gameId: string): Promise<HintResponse> {
    return request(`${this.baseUrl}/games/${gameId}/hint`);
  }

  fractal(d: number, n: number): Promise<FractalResponse> {
    return request(`${this.baseUrl}/fractal?d=${d}&n=${n}`);
  }
}
