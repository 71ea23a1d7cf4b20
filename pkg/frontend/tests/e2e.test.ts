// Scripted end-to-end session against a real server: the same store, api
// client, and viewer code the browser runs, driven over live HTTP. The
// server is spawned as a subprocess; no mocks anywhere.
import { ChildProcess, spawn } from "node:child_process";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, NimcubeApi, WireMove } from "../src/api.js";
import { GameStore } from "../src/game.js";
import { FractalViewer } from "../src/viewer.js";

const PORT = 18000 + (process.pid % 20000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

// Test-side oracle for the hint contract: the winning reductions are
// exactly pile j -> sizes[j] xor s where that shrinks the pile.
function expectedWinningMoves(piles: number[]): WireMove[] {
  const s = piles.reduce((acc, p) => acc ^ p, 0);
  if (s === 0) return [];
  return piles
    .map((size, index) => ({ pile_index: index, new_size: size ^ s }))
    .filter((move) => move.new_size < piles[move.pile_index]);
}

beforeAll(async () => {
  server = spawn("python3", [
    "-m", "nimcube.cli", "serve", "--port", String(PORT), "--budget", "8",
  ], { stdio: "ignore" });
  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const response = await fetch(`${BASE}/`);
      if (response.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("server did not come up");
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
});

afterAll(() => {
  server.kill();
});

describe("end-to-end against a live server", () => {
  it("plays a full game from (4,6,9); hints always match the strategy", async () => {
    const api = new NimcubeApi(BASE);
    const store = new GameStore(api);

    await store.createGame("4,6,9", true);
    let state = store.getState();
    expect(state.sessionId).not.toBeNull();
    expect(state.status).toBe("in_progress");
    expect(state.banner).toContain("N-position");

    let turns = 0;
    while (store.getState().status === "in_progress") {
      expect(turns++).toBeLessThan(40);

      await store.requestHint();
      state = store.getState();
      const hint = state.lastHint;
      expect(hint).not.toBeNull();
      expect(hint!.winning_moves).toEqual(expectedWinningMoves(state.piles));

      // Follow the hint when one exists, otherwise remove a single stone.
      let move: WireMove;
      if (hint!.winning_moves.length > 0) {
        move = hint!.winning_moves[0];
      } else {
        const index = state.piles.findIndex((p) => p > 0);
        move = { pile_index: index, new_size: state.piles[index] - 1 };
      }
      expect(await store.submitMove(move.pile_index, move.new_size)).toBe(true);
    }

    // Starting from a winnable position and following hints ends in a win.
    state = store.getState();
    expect(state.status).toBe("human_won");
    expect(state.piles.every((p) => p === 0)).toBe(true);
    expect(state.history.length).toBeGreaterThan(0);
    expect(state.history[state.history.length - 1].mover).toBe("human");
  });

  it("rejects illegal and duplicate moves with stable codes", async () => {
    const api = new NimcubeApi(BASE);
    const store = new GameStore(api);
    await store.createGame("2,2", true);

    await store.submitMove(0, 0);
    const replay = api.submitMove(store.getState().sessionId!, {
      pile_index: 0, new_size: 0,
    });
    await expect(replay).rejects.toMatchObject({ code: "illegal_move" });
  });

  it("renders exactly the served count for n = 1..4", async () => {
    const api = new NimcubeApi(BASE);
    const viewer = new FractalViewer();
    for (let n = 1; n <= 4; n++) {
      const data = await api.fractal(3, n);
      expect(data.count).toBe(2 ** (2 * n));
      const rendered = viewer.setPoints(data);
      expect(rendered).toBe(data.count);
      expect(viewer.pointCount).toBe(data.count);
    }
  });

  it("shows the server budget message verbatim above the cap", async () => {
    const api = new NimcubeApi(BASE);
    try {
      await api.fractal(3, 5);   // 2^10 points > 2^8 budget
      expect.unreachable("expected budget_exceeded");
    } catch (err) {
      const apiErr = err as ApiError;
      expect(apiErr.code).toBe("budget_exceeded");
      expect(apiErr.message).toContain("2^8");
    }
  });
});
