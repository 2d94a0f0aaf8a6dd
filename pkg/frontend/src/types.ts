/** JSON shapes served by the qpuzzle session service.  The UI consumes
 * these verbatim; it never derives amplitudes or game status itself. */

export interface AmplitudeEntry {
  re: number;
  im: number;
  probability: number;
}

export interface MoveInfo {
  label: string;
  cost: number;
}

export type SessionStatus = "solving" | "solved";

export interface SessionView {
  board: string;
  dim: number;
  basis: string[];
  layout: [number, number][] | null;
  amplitudes: AmplitudeEntry[];
  moves_taken: number;
  status: SessionStatus;
  solved_index: number;
  last_outcome: number | null;
  available_moves: MoveInfo[];
  version: number;
}

export interface CreateSessionRequest {
  board: string | object;
  scramble_seed?: number;
  len_min?: number;
  len_max?: number;
  rng_seed?: number;
  solved_index?: number;
}

export interface HintPlan {
  solver: "classical" | "quantum" | "combined";
  word: string[];
  M: number;
  P: number;
  expected_cost: number;
}

export interface LogRecord {
  t: number;
  kind: "move" | "measure";
  label?: string;
  outcome?: number;
  moves_taken: number;
}
