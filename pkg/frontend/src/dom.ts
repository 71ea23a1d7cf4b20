// DOM wiring for the game screen. Everything rendered here comes straight
// out of the store's state; the only local state is form staging (which
// pile is selected before the move is submitted).

import { GameStore, UiGameState } from "./game.js";

function el<T extends HTMLElement>(root: Document, id: string): T {
  const node = root.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

export function bindGameScreen(root: Document, store: GameStore): void {
  const pilesInput = el<HTMLInputElement>(root, "piles-input");
  const engineFirst = el<HTMLInputElement>(root, "engine-first");
  const startButton = el<HTMLButtonElement>(root, "start-button");
  const banner = el<HTMLDivElement>(root, "banner");
  const pilesBox = el<HTMLDivElement>(root, "piles");
  const moveForm = el<HTMLFormElement>(root, "move-form");
  const selectedLabel = el<HTMLSpanElement>(root, "selected-pile");
  const newSizeInput = el<HTMLInputElement>(root, "new-size");
  const moveButton = el<HTMLButtonElement>(root, "move-button");
  const hintButton = el<HTMLButtonElement>(root, "hint-button");
  const hintBox = el<HTMLDivElement>(root, "hint-output");
  const historyList = el<HTMLOListElement>(root, "history");
  const announcement = el<HTMLDivElement>(root, "announcement");
  const errorBox = el<HTMLDivElement>(root, "error-box");

  let selectedPile: number | null = null;

  function renderPiles(state: UiGameState): void {
    pilesBox.textContent = "";
    state.piles.forEach((size, index) => {
      const button = root.createElement("button");
      button.type = "button";
      button.className = "pile" + (index === selectedPile ? " selected" : "");
      button.dataset.pile = String(index);
      button.textContent = `pile ${index}: ${size}`;
      button.disabled = state.status !== "in_progress" || size === 0;
      button.addEventListener("click", () => {
        selectedPile = index;
        selectedLabel.textContent = `pile ${index} (${size} stones)`;
        newSizeInput.max = String(size - 1);
        newSizeInput.value = "";
        render(store.getState());
        newSizeInput.focus();
      });
      pilesBox.appendChild(button);
    });
  }

  function render(state: UiGameState): void {
    banner.textContent = state.banner;
    errorBox.textContent = state.error ?? "";
    startButton.disabled = state.pending;
    hintButton.disabled = state.pending || state.status !== "in_progress";
    moveButton.disabled = state.pending || state.status !== "in_progress"
      || selectedPile === null;
    renderPiles(state);

    historyList.textContent = "";
    for (const item of state.history) {
      const entry = root.createElement("li");
      entry.textContent = `${item.mover}: pile ${item.pileIndex} -> ${item.newSize}`
        + ` [${item.position.join(", ")}]`;
      historyList.appendChild(entry);
    }

    if (state.status === "human_won") {
      announcement.textContent = "You took the last stone — you win!";
    } else if (state.status === "engine_won") {
      announcement.textContent = "The engine took the last stone. You lose.";
    } else {
      announcement.textContent = "";
    }

    if (state.lastHint === null) {
      hintBox.textContent = "";
    } else if (state.lastHint.winning_moves.length === 0) {
      hintBox.textContent = "No winning move exists from this position.";
    } else {
      hintBox.textContent = "Winning moves: " + state.lastHint.winning_moves
        .map((m) => `pile ${m.pile_index} -> ${m.new_size}`)
        .join("; ");
    }
  }

  el<HTMLFormElement>(root, "new-game-form").addEventListener("submit", (event) => {
    event.preventDefault();
    selectedPile = null;
    selectedLabel.textContent = "none";
    void store.createGame(pilesInput.value, !engineFirst.checked);
  });

  moveForm.addEventListener("submit", (event) => {
    event.preventDefault();
    if (selectedPile === null) return;
    const newSize = Number(newSizeInput.value);
    // Inline validation: an invalid size never produces a request.
    const problem = store.validateMove(selectedPile, newSize);
    if (problem !== null) {
      errorBox.textContent = problem;
      return;
    }
    const pile = selectedPile;
    selectedPile = null;
    selectedLabel.textContent = "none";
    void store.submitMove(pile, newSize);
  });

  hintButton.addEventListener("click", () => {
    void store.requestHint();
  });

  store.subscribe(render);
}
