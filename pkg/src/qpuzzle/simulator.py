"""Live puzzle state, referee measurement, and the move-counted game."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO

import numpy as np

from .boards import PuzzleSpace
from .linalg import equal_up_to_phase
from .operators import MoveOperator

NORM_TOL = 1e-10
DRIFT_ALARM = 1e-8


class SimulatorError(RuntimeError):
    pass


@dataclass
class QuditState:
    amps: np.ndarray

    def __post_init__(self):
        self.amps = np.asarray(self.amps, dtype=np.complex128)
        n = np.linalg.norm(self.amps)
        if abs(n - 1.0) > NORM_TOL:
            raise SimulatorError(f"state norm {n} out of tolerance")

    @staticmethod
    def basis(dim: int, index: int) -> "QuditState":
        v = np.zeros(dim, dtype=np.complex128)
        v[index] = 1.0
        return QuditState(v)

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    def probability(self, index: int) -> float:
        return float(np.abs(self.amps[index]) ** 2)

    def copy(self) -> "QuditState":
        return QuditState(self.amps.copy())


def success_probability(state: QuditState, solved_index: int) -> float:
    return state.probability(solved_index)


@dataclass
class RefereeConfig:
    solved_index: int
    scramble_state: QuditState
    rng_seed: int

    def __post_init__(self):
        if not 0 <= self.solved_index < self.scramble_state.dim:
            raise SimulatorError("solved index out of range")


@dataclass
class GameSession:
    """Single-owner mutable game state; every move and measurement counts."""

    space: PuzzleSpace
    referee: RefereeConfig
    current: QuditState = field(init=False)
    moves_taken: int = field(init=False, default=0)
    status: str = field(init=False, default="solving")
    history: list[dict] = field(init=False)
    _rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if self.referee.scramble_state.dim != self.space.dim:
            raise SimulatorError("scramble dimension does not match space")
        self.current = self.referee.scramble_state.copy()
        self.history = []
        self._rng = np.random.default_rng(self.referee.rng_seed)

    def apply_move(self, op: MoveOperator) -> None:
        if self.status != "solving":
            raise SimulatorError("cannot move after the puzzle is solved")
        if op.dim != self.space.dim:
            raise SimulatorError("operator dimension mismatch")
        amps = op.apply(self.current.amps)
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > DRIFT_ALARM:
            raise SimulatorError(f"norm drifted to {norm}; unitary application is broken")
        self.current = QuditState(amps / norm)
        self.moves_taken += op.move_cost
        self.history.append(
            {"t": len(self.history), "kind": "move", "label": op.label,
             "moves_taken": self.moves_taken}
        )

    def measure(self) -> int:
        """Referee verification.  Samples a basis outcome; success projects
        onto the solved state, failure resets to the scramble."""
        if self.status != "solving":
            raise SimulatorError("cannot measure after the puzzle is solved")
        probs = np.abs(self.current.amps) ** 2
        probs = probs / probs.sum()
        outcome = int(self._rng.choice(self.space.dim, p=probs))
        self.moves_taken += 1
        if outcome == self.referee.solved_index:
            self.status = "solved"
            self.current = QuditState.basis(self.space.dim, outcome)
        else:
            # The outcome-dependent reset unitary maps |outcome> back to the
            # scramble; only its action on the post-measurement state is
            # observable, so the scramble is restored directly.
            self.current = self.referee.scramble_state.copy()
        self.history.append(
            {"t": len(self.history), "kind": "measure", "outcome": outcome,
             "moves_taken": self.moves_taken}
        )
        return outcome

    def is_reset_to_scramble(self) -> bool:
        return equal_up_to_phase(self.current.amps, self.referee.scramble_state.amps)

    def write_log(self, fh: IO[str]) -> None:
        for rec in self.history:
            fh.write(json.dumps(rec) + "\n")


def replay_log(space: PuzzleSpace, referee: RefereeConfig, records: list[dict],
               moves: dict[str, MoveOperator]) -> GameSession:
    """Re-drive a session from its JSON-lines log; outcomes must agree
    because the referee RNG is seeded."""
    session = GameSession(space, referee)
    for rec in records:
        if rec["kind"] == "move":
            session.apply_move(moves[rec["label"]])
        else:
            outcome = session.measure()
            if outcome != rec["outcome"]:
                raise SimulatorError(
                    f"replay diverged: outcome {outcome} vs logged {rec['outcome']}"
                )
    return session
