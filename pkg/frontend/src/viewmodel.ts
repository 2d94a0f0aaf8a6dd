/** Pure view-model functions: SessionView in, render-ready data out.
 *
 * Everything here is a plain projection of what the service sent; no
 * amplitudes, probabilities, or statuses are computed client-side beyond
 * formatting.  The contract tests exercise these functions against a
 * stub service replaying a recorded session log. */

import type { HintPlan, SessionView } from "./types.js";

export interface TileCell {
  x: number;
  y: number;
  color: number;
}

export interface BasisRendering {
  /** Occupation word, e.g. "0011". */
  label: string;
  /** One colored cell per site, positioned from the board layout. */
  tiles: TileCell[];
  /** Bar height, exactly the service-reported probability. */
  probability: number;
  /** Phase dial angle in degrees, or null when the amplitude vanishes. */
  phaseDeg: number | null;
  isSolvedTarget: boolean;
}

export interface BoardRendering {
  basisStates: BasisRendering[];
  movesTaken: number;
  status: string;
  measureDisabled: boolean;
  lastOutcome: number | null;
  moves: { label: string; cost: number }[];
  /** Display-time sanity check; always 1 up to rounding. */
  probabilitySum: number;
}

const PROBABILITY_EPS = 1e-12;

export function renderBoard(view: SessionView): BoardRendering {
  const basisStates = view.basis.map((label, i) => {
    const amp = view.amplitudes[i];
    if (amp === undefined) {
      throw new Error(`service view missing amplitude ${i}`);
    }
    return {
      label,
      tiles: tilesFor(label, view.layout),
      probability: amp.probability,
      phaseDeg:
        amp.probability > PROBABILITY_EPS
          ? (Math.atan2(amp.im, amp.re) * 180) / Math.PI
          : null,
      isSolvedTarget: i === view.solved_index,
    };
  });
  return {
    basisStates,
    movesTaken: view.moves_taken,
    status: view.status,
    measureDisabled: view.status !== "solving",
    lastOutcome: view.last_outcome,
    moves: view.available_moves.map((m) => ({ label: m.label, cost: m.cost })),
    probabilitySum: basisStates.reduce((acc, b) => acc + b.probability, 0),
  };
}

function tilesFor(
  word: string,
  layout: [number, number][] | null,
): TileCell[] {
  return Array.from(word).map((ch, site) => {
    const xy = layout?.[site] ?? [site, 0];
    return { x: xy[0], y: xy[1], color: Number(ch) };
  });
}

export interface HintPanel {
  solver: string;
  /** The plan word exactly as the service returned it. */
  word: string[];
  M: number;
  P: number;
  expectedCost: number;
  text: string;
}

export function renderHint(plan: HintPlan): HintPanel {
  const moves = plan.word.length > 0 ? plan.word.join(" ") : "(no moves)";
  return {
    solver: plan.solver,
    word: [...plan.word],
    M: plan.M,
    P: plan.P,
    expectedCost: plan.expected_cost,
    text: `${moves} then measure, expected ${plan.expected_cost} moves`,
  };
}

/** Live expected total cost from the current position: the player has
 * already spent movesTaken moves, and the service-quoted plan succeeds
 * with probability P per attempt. */
export function liveExpectedCost(movesTaken: number, P: number): number {
  return (movesTaken + 1) / P;
}

export function formatProbability(p: number): string {
  return p.toFixed(4);
}
