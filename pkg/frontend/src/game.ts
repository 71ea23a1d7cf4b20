// Game-screen state machine. State is only ever replaced from server
// responses; the sole client-side logic is input validation before a
// request goes out, and at most one request is in flight at a time.

import {
  ApiError,
  Classification,
  GameStatus,
  HintResponse,
  MoveView,
  NimcubeApi,
  Turn,
} from "./api.js";

export interface HistoryItem {
  mover: Turn;
  pileIndex: number;
  newSize: number;
  position: number[];
}

export interface UiGameState {
  sessionId: string | null;
  piles: number[];
  toMove: Turn | null;
  status: GameStatus | "idle";
  history: HistoryItem[];
  banner: string;
  lastHint: HintResponse | null;
  pending: boolean;
  error: string | null;
}

const FRIENDLY_ERRORS: Record<string, string> = {
  illegal_move: "That move is not allowed.",
  wrong_turn: "It is not your turn.",
  terminal_game: "The game is already over.",
  not_found: "This game expired on the server; start a new one.",
  bad_request: "The server rejected the request.",
  unreachable: "Cannot reach the server.",
};

function describe(cls: Classification): string {
  return cls === "P"
    ? "P-position: lost against perfect play"
    : "N-position: the side to move can force a win";
}

function errorMessage(err: unknown): string {
  if (err instanceof ApiError) {
    // budget messages carry the retry guidance, show them as-is
    if (err.code === "budget_exceeded") return err.message;
    return FRIENDLY_ERRORS[err.code] ?? err.message;
  }
  return String(err);
}

export function parsePiles(text: string): number[] | null {
  const parts = text.split(/[\s,]+/).filter((p) => p.length > 0);
  if (parts.length === 0) return null;
  const piles: number[] = [];
  for (const part of parts) {
    if (!/^\d+$/.test(part)) return null;
    const value = Number(part);
    if (!Number.isSafeInteger(value)) return null;
    piles.push(value);
  }
  if (piles.every((p) => p === 0)) return null;
  return piles;
}

type Listener = (state: UiGameState) => void;

export class GameStore {
  private state: UiGameState = GameStore.initialState();
  private listeners: Listener[] = [];

  constructor(private readonly api: NimcubeApi) {}

  static initialState(): UiGameState {
    return {
      sessionId: null,
      piles: [],
      toMove: null,
      status: "idle",
      history: [],
      banner: "",
      lastHint: null,
      pending: false,
      error: null,
    };
  }

  getState(): UiGameState {
    return this.state;
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
    listener(this.state);
  }

  private set(patch: Partial<UiGameState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  private pushHistory(history: HistoryItem[], mover: Turn,
                      view: MoveView | null): HistoryItem[] {
    if (view === null) return history;
    return [...history, {
      mover,
      pileIndex: view.pile_index,
      newSize: view.new_size,
      position: view.position,
    }];
  }

  async createGame(pilesText: string, humanFirst: boolean): Promise<void> {
    if (this.state.pending) return;
    const piles = parsePiles(pilesText);
    if (piles === null) {
      this.set({ error: "Enter pile sizes as nonnegative numbers, e.g. 4,6,9 (not all zero)." });
      return;
    }
    this.set({ pending: true, error: null });
    try {
      const created = await this.api.createGame(piles, humanFirst);
      let banner = `Start: ${describe(created.classification)}`;
      if (created.classification === "P" && humanFirst) {
        banner = `Warning — you chose a lost opening. ${describe("P")}`;
      }
      this.set({
        sessionId: created.id,
        piles: created.position,
        toMove: created.to_move,
        status: created.status,
        history: this.pushHistory([], "engine", created.engine_move),
        banner,
        lastHint: null,
        pending: false,
      });
    } catch (err) {
      this.set({ pending: false, error: errorMessage(err) });
    }
  }

  // Returns false when inline validation rejects the move (no request sent).
  validateMove(pileIndex: number, newSize: number): string | null {
    if (this.state.sessionId === null || this.state.status !== "in_progress") {
      return "No game in progress.";
    }
    if (!Number.isInteger(pileIndex) || pileIndex < 0
        || pileIndex >= this.state.piles.length) {
      return "Pick a pile first.";
    }
    if (!Number.isInteger(newSize) || newSize < 0) {
      return "The new size must be a nonnegative whole number.";
    }
    if (newSize >= this.state.piles[pileIndex]) {
      return `The new size must be below ${this.state.piles[pileIndex]} (remove at least one stone).`;
    }
    return null;
  }

  async submitMove(pileIndex: number, newSize: number): Promise<boolean> {
    if (this.state.pending) return false;
    const invalid = this.validateMove(pileIndex, newSize);
    if (invalid !== null) {
      this.set({ error: invalid });
      return false;
    }
    this.set({ pending: true, error: null });
    try {
      const moved = await this.api.submitMove(this.state.sessionId as string, {
        pile_index: pileIndex,
        new_size: newSize,
      });
      let history = this.pushHistory(this.state.history, "human", moved.human_move);
      history = this.pushHistory(history, "engine", moved.engine_move);
      let banner = `After your move: ${describe(moved.human_move.classification)}`;
      if (moved.engine_move !== null) {
        banner += ` — engine answered, now ${describe(moved.engine_move.classification)}`;
      }
      this.set({
        piles: moved.position,
        toMove: moved.to_move,
        status: moved.status,
        history,
        banner,
        lastHint: null,
        pending: false,
      });
      return true;
    } catch (err) {
      this.set({ pending: false, error: errorMessage(err) });
      return false;
    }
  }

  async requestHint(): Promise<void> {
    if (this.state.pending || this.state.sessionId === null) return;
    this.set({ pending: true, error: null });
    try {
      const lastHint = await this.api.hint(this.state.sessionId);
      this.set({ lastHint, pending: false });
    } catch (err) {
      this.set({ pending: false, error: errorMessage(err) });
    }
  }
}
