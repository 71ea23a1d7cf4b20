import { ApiError, NimcubeApi } from "./api.js";
import { bindGameScreen } from "./dom.js";
import { GameStore } from "./game.js";
import { FractalViewer } from "./viewer.js";

const api = new NimcubeApi("");
const store = new GameStore(api);
bindGameScreen(document, store);

const canvas = document.getElementById("viewer-canvas") as HTMLCanvasElement;
const slider = document.getElementById("n-slider") as HTMLInputElement;
const nValue = document.getElementById("n-value") as HTMLSpanElement;
const countLabel = document.getElementById("point-count") as HTMLSpanElement;
const viewerError = document.getElementById("viewer-error") as HTMLDivElement;

let viewer: FractalViewer | null = null;
try {
  viewer = new FractalViewer(canvas);
} catch (err) {
  viewerError.textContent = `3-D viewer unavailable: ${err}`;
}

async function loadIteration(n: number): Promise<void> {
  if (viewer === null) return;
  nValue.textContent = String(n);
  try {
    const data = await api.fractal(3, n);
    const rendered = viewer.setPoints(data);
    countLabel.textContent = `${rendered} points`;
    viewerError.textContent = "";
  } catch (err) {
    // The server's budget message is shown verbatim so the user knows the cap.
    viewerError.textContent = err instanceof ApiError ? err.message : String(err);
  }
}

slider.addEventListener("input", () => {
  void loadIteration(Number(slider.value));
});

store.subscribe((state) => {
  viewer?.setHighlight(state.piles.length === 3 ? state.piles : null);
});

function fitViewer(): void {
  const rect = canvas.parentElement?.getBoundingClientRect();
  if (rect && viewer) viewer.resize(rect.width, Math.max(rect.height, 320));
}

window.addEventListener("resize", fitViewer);
fitViewer();
void loadIteration(Number(slider.value));
