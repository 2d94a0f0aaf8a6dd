/** Single-page play surface.  All state comes from the session service;
 * this module only wires DOM events to service calls and paints the
 * view-model output. */

import { HttpService, ServiceError, type SessionService } from "./api.js";
import type { HintPlan, SessionView } from "./types.js";
import {
  formatProbability,
  liveExpectedCost,
  renderBoard,
  renderHint,
} from "./viewmodel.js";

const TILE = 28;
const COLOR_PALETTE = ["#2e7d32", "#1565c0", "#ef6c00", "#6a1b9a", "#c62828", "#00838f"];

interface AppState {
  service: SessionService;
  sessionId: string | null;
  hintsOn: boolean;
  lastHint: HintPlan | null;
  readOnly: boolean;
  unsubscribe: (() => void) | null;
}

export function mountApp(root: HTMLElement, service: SessionService = new HttpService()): void {
  const state: AppState = {
    service,
    sessionId: null,
    hintsOn: false,
    lastHint: null,
    readOnly: false,
    unsubscribe: null,
  };

  root.innerHTML = `
    <header>
      <h1>qpuzzle</h1>
      <form id="new-session">
        <select id="board-select"></select>
        <label>seed <input id="seed" type="number" value="0" size="4"></label>
        <button type="submit">new game</button>
      </form>
    </header>
    <main>
      <section id="status-bar"></section>
      <section id="amplitudes"></section>
      <section id="controls">
        <div id="move-buttons"></div>
        <button id="measure">measure</button>
        <label><input id="hints-toggle" type="checkbox"> hints</label>
      </section>
      <section id="hint-panel" hidden></section>
      <section id="banner" hidden></section>
    </main>`;

  const boardSelect = root.querySelector<HTMLSelectElement>("#board-select")!;
  const form = root.querySelector<HTMLFormElement>("#new-session")!;
  const measureBtn = root.querySelector<HTMLButtonElement>("#measure")!;
  const hintsToggle = root.querySelector<HTMLInputElement>("#hints-toggle")!;

  void loadBoards();

  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    void startSession();
  });
  measureBtn.addEventListener("click", () => void doMeasure());
  hintsToggle.addEventListener("change", () => {
    state.hintsOn = hintsToggle.checked;
    root.querySelector<HTMLElement>("#hint-panel")!.hidden = !state.hintsOn;
    if (state.hintsOn) void refreshHint();
  });

  async function loadBoards(): Promise<void> {
    try {
      const resp = await fetch("/boards");
      const boards = (await resp.json()) as Record<string, unknown>;
      boardSelect.innerHTML = Object.keys(boards)
        .map((name) => `<option value="${name}">${name}</option>`)
        .join("");
    } catch {
      boardSelect.innerHTML = `<option value="2x2_fermion">2x2_fermion</option>`;
    }
  }

  async function startSession(): Promise<void> {
    state.unsubscribe?.();
    const seed = Number(root.querySelector<HTMLInputElement>("#seed")!.value);
    const created = await state.service.createSession({
      board: boardSelect.value,
      scramble_seed: seed,
      rng_seed: seed,
    });
    state.sessionId = created.session_id;
    state.readOnly = false;
    state.lastHint = null;
    paint(created);
    state.unsubscribe = state.service.events(created.session_id, paint);
  }

  async function doMove(label: string): Promise<void> {
    if (!state.sessionId || state.readOnly) return;
    try {
      paint(await state.service.move(state.sessionId, label));
      if (state.hintsOn) void refreshHint();
    } catch (err) {
      handleError(err);
    }
  }

  async function doMeasure(): Promise<void> {
    if (!state.sessionId || state.readOnly) return;
    try {
      const result = await state.service.measure(state.sessionId);
      paint(result);
      showBanner(
        result.status === "solved"
          ? `solved in ${result.moves_taken} moves`
          : `outcome |${result.outcome}> — scramble restored, keep going`,
      );
    } catch (err) {
      handleError(err);
    }
  }

  async function refreshHint(): Promise<void> {
    if (!state.sessionId) return;
    try {
      state.lastHint = await state.service.hint(state.sessionId);
      paintHint();
    } catch (err) {
      if (err instanceof ServiceError && err.status === 403) {
        root.querySelector<HTMLElement>("#hint-panel")!.textContent =
          "hints are disabled for this service";
      }
    }
  }

  function paintHint(): void {
    if (!state.lastHint) return;
    const panel = renderHint(state.lastHint);
    root.querySelector<HTMLElement>("#hint-panel")!.textContent =
      `${panel.solver}: ${panel.text}`;
  }

  function paint(view: SessionView): void {
    const rendering = renderBoard(view);
    const status = root.querySelector<HTMLElement>("#status-bar")!;
    status.textContent =
      `${view.board} — ${rendering.status} — moves: ${rendering.movesTaken}` +
      (state.lastHint
        ? ` — E[total] = ${liveExpectedCost(rendering.movesTaken, state.lastHint.P).toFixed(2)}`
        : "") +
      (state.readOnly ? " — connection lost, replaying log (read-only)" : "");

    const amps = root.querySelector<HTMLElement>("#amplitudes")!;
    amps.innerHTML = "";
    for (const b of rendering.basisStates) {
      const row = document.createElement("div");
      row.className = "basis-row" + (b.isSolvedTarget ? " target" : "");
      row.appendChild(tileCanvas(b.tiles));
      const bar = document.createElement("div");
      bar.className = "prob-bar";
      bar.style.width = `${Math.round(b.probability * 300)}px`;
      bar.title = `|${b.label}>  p=${formatProbability(b.probability)}`;
      if (b.phaseDeg !== null) {
        bar.style.background = `hsl(${((b.phaseDeg % 360) + 360) % 360}, 70%, 50%)`;
      }
      const text = document.createElement("span");
      text.textContent = `|${b.label}>  ${formatProbability(b.probability)}`;
      row.append(bar, text);
      amps.appendChild(row);
    }

    const buttons = root.querySelector<HTMLElement>("#move-buttons")!;
    buttons.innerHTML = "";
    for (const m of rendering.moves) {
      const btn = document.createElement("button");
      btn.textContent = `${m.label} (cost ${m.cost})`;
      btn.disabled = rendering.measureDisabled || state.readOnly;
      btn.addEventListener("click", () => void doMove(m.label));
      buttons.appendChild(btn);
    }
    measureBtn.disabled = rendering.measureDisabled || state.readOnly;
  }

  function tileCanvas(tiles: { x: number; y: number; color: number }[]): HTMLCanvasElement {
    const canvas = document.createElement("canvas");
    const w = Math.max(...tiles.map((t) => t.x)) + 1;
    const h = Math.max(...tiles.map((t) => t.y)) + 1;
    canvas.width = w * TILE;
    canvas.height = h * TILE;
    const ctx = canvas.getContext("2d");
    if (ctx) {
      for (const t of tiles) {
        ctx.fillStyle = COLOR_PALETTE[t.color % COLOR_PALETTE.length]!;
        ctx.fillRect(t.x * TILE, t.y * TILE, TILE - 2, TILE - 2);
      }
    }
    return canvas;
  }

  function showBanner(message: string): void {
    const banner = root.querySelector<HTMLElement>("#banner")!;
    banner.hidden = false;
    banner.textContent = message;
  }

  function handleError(err: unknown): void {
    if (err instanceof ServiceError) {
      showBanner(`error: ${err.message}`);
      return;
    }
    // Transport failure: drop to read-only replay of the last known log.
    state.readOnly = true;
    state.unsubscribe?.();
    showBanner("connection lost — showing last known state (read-only)");
    if (state.sessionId) {
      void state.service
        .view(state.sessionId)
        .then(paint)
        .catch(() => undefined);
    }
  }
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) {
    mountApp(root);
  }
}
