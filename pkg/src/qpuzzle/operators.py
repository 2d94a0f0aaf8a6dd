"""Move unitaries: statistics-correct SWAPs, fractional/square-root SWAPs,
diagonal phase gates, and the cube permutations, all as structured d x d
complex matrices with fast application paths."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .boards import BasisState, BoardError, BoardSpec, PuzzleSpace, enumerate_basis
from .library import cube_board
from .linalg import is_unitary, phase_key
from .oracle import oracle_swap_sign

SIGNED_PERMUTATION = "signed_permutation"
ROOT_MIXTURE = "root_mixture"
DIAGONAL_PHASE = "diagonal_phase"
DENSE = "dense"


class OperatorError(ValueError):
    pass


@dataclass(frozen=True)
class MoveOperator:
    label: str
    matrix: np.ndarray
    structure: str
    move_cost: int = 1
    # Fast-apply data: destination index and phase per source column for
    # permutation-backed structures; (cos, sin) for root mixtures.
    dest: np.ndarray | None = field(default=None, repr=False)
    phase: np.ndarray | None = field(default=None, repr=False)
    mix: tuple[float, float] | None = field(default=None, repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if not is_unitary(m):
            raise OperatorError(f"operator {self.label} is not unitary")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Apply to a state vector, O(d) for structured operators."""
        if self.structure == SIGNED_PERMUTATION:
            out = np.empty_like(vec)
            out[self.dest] = self.phase * vec
            return out
        if self.structure == ROOT_MIXTURE:
            c, s = self.mix
            out = np.empty_like(vec)
            out[self.dest] = self.phase * vec
            return c * vec + 1j * s * out
        if self.structure == DIAGONAL_PHASE:
            return self.phase * vec
        return self.matrix @ vec

    def to_json(self) -> dict:
        entries = []
        for (r, c), v in np.ndenumerate(self.matrix):
            if v != 0:
                entries.append([int(r), int(c), float(v.real), float(v.imag)])
        return {
            "label": self.label,
            "dim": self.dim,
            "structure": self.structure,
            "entries": entries,
        }

    @staticmethod
    def from_json(obj: dict, move_cost: int = 1) -> "MoveOperator":
        m = np.zeros((obj["dim"], obj["dim"]), dtype=np.complex128)
        for r, c, re, im in obj["entries"]:
            m[r, c] = re + 1j * im
        return MoveOperator(obj["label"], m, obj["structure"], move_cost=move_cost)


@dataclass(frozen=True)
class GateSet:
    generators: tuple[MoveOperator, ...]

    def __post_init__(self):
        if not self.generators:
            raise OperatorError("gate set must be nonempty")
        dims = {g.dim for g in self.generators}
        if len(dims) != 1:
            raise OperatorError(f"mixed dimensions in gate set: {dims}")

    @property
    def dim(self) -> int:
        return self.generators[0].dim

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(g.label for g in self.generators)

    def by_label(self, label: str) -> MoveOperator:
        for g in self.generators:
            if g.label == label:
                return g
        raise OperatorError(f"no generator labeled {label!r}")


def _signed_perm_operator(
    label: str, space: PuzzleSpace, edge: tuple[int, int], move_cost: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    d = space.dim
    dest = np.empty(d, dtype=np.int64)
    phase = np.empty(d, dtype=np.complex128)
    for i, bstate in enumerate(space.basis):
        new_state, ph = oracle_swap_sign(bstate, edge, space.board)
        dest[i] = space.index_of(new_state)
        phase[i] = ph
    return dest, phase


def build_swap(space: PuzzleSpace, edge: tuple[int, int] | str, move_cost: int = 1) -> MoveOperator:
    """Statistics-correct SWAP along one edge, as a signed permutation."""
    edge_obj, label = _resolve_edge(space.board, edge)
    dest, phase = _signed_perm_operator(label, space, edge_obj)
    m = np.zeros((space.dim, space.dim), dtype=np.complex128)
    m[dest, np.arange(space.dim)] = phase
    return MoveOperator(
        f"S_{label}", m, SIGNED_PERMUTATION, move_cost=move_cost, dest=dest, phase=phase
    )


def build_fractional_swap(
    space: PuzzleSpace, edge: tuple[int, int] | str, theta: float, move_cost: int = 1
) -> MoveOperator:
    """cos(theta) I + i sin(theta) SWAP_edge.  theta = pi/4 is the square
    root of SWAP; theta = pi/2 recovers the SWAP up to a global i."""
    edge_obj, label = _resolve_edge(space.board, edge)
    dest, phase = _signed_perm_operator(label, space, edge_obj)
    d = space.dim
    c, s = np.cos(theta), np.sin(theta)
    m = c * np.eye(d, dtype=np.complex128)
    m[dest, np.arange(d)] += 1j * s * phase
    name = f"H_{label}" if abs(theta - np.pi / 4) < 1e-15 else f"F_{label}({theta:g})"
    return MoveOperator(
        name, m, ROOT_MIXTURE, move_cost=move_cost, dest=dest, phase=phase, mix=(c, s)
    )


def build_root_swap(space: PuzzleSpace, edge: tuple[int, int] | str, move_cost: int = 1) -> MoveOperator:
    return build_fractional_swap(space, edge, np.pi / 4, move_cost=move_cost)


def build_phase_gate(space_or_dim: PuzzleSpace | int, target: int, move_cost: int = 1) -> MoveOperator:
    """diag(1, ..., 1, -1, 1, ...): a pi phase on one basis state."""
    d = space_or_dim if isinstance(space_or_dim, int) else space_or_dim.dim
    if not 0 <= target < d:
        raise OperatorError(f"phase target {target} out of range for dim {d}")
    diag = np.ones(d, dtype=np.complex128)
    diag[target] = -1
    return MoveOperator(
        f"P{d}", np.diag(diag), DIAGONAL_PHASE, move_cost=move_cost, phase=diag
    )


def swap_set(space: PuzzleSpace) -> GateSet:
    """All edge SWAPs, in the board's edge order."""
    return GateSet(tuple(build_swap(space, e.sites) for e in space.board.edges))


def root_set(space: PuzzleSpace) -> GateSet:
    """All edge square-root SWAPs, in the board's edge order."""
    return GateSet(tuple(build_root_swap(space, e.sites) for e in space.board.edges))


def combined_set(space: PuzzleSpace) -> GateSet:
    return GateSet(swap_set(space).generators + root_set(space).generators)


def build_cube_family():
    """The 2x2x1 cube: 6-state space, permutations P_U/P_R, and their
    square roots Q_U/Q_R."""
    space = enumerate_basis(cube_board())
    p_u = build_swap(space, "U")
    p_r = build_swap(space, "R")
    q_u = build_root_swap(space, "U")
    q_r = build_root_swap(space, "R")
    p_u = _relabel(p_u, "P_U")
    p_r = _relabel(p_r, "P_R")
    q_u = _relabel(q_u, "Q_U")
    q_r = _relabel(q_r, "Q_R")
    return space, p_u, p_r, q_u, q_r


def _relabel(op: MoveOperator, label: str) -> MoveOperator:
    return MoveOperator(
        label, op.matrix, op.structure, move_cost=op.move_cost,
        dest=op.dest, phase=op.phase, mix=op.mix,
    )


def operator_closure_size(gens: GateSet, cap: int = 10000) -> int | str:
    """Order of the generated matrix group, deduplicated up to global
    phase.  Returns "exceeds cap" when the breadth-first closure passes
    ``cap`` elements."""
    if cap < 1:
        raise OperatorError("cap must be >= 1")
    d = gens.dim
    eye = np.eye(d, dtype=np.complex128)
    seen = {phase_key(eye)}
    frontier = [eye]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens.generators:
                prod = g.matrix @ m
                key = phase_key(prod)
                if key not in seen:
                    seen.add(key)
                    if len(seen) > cap:
                        return "exceeds cap"
                    nxt.append(prod)
        frontier = nxt
    return len(seen)


def basis_reachability(gens: GateSet, start: int) -> dict[int, int]:
    """Breadth-first distances over basis states under the generators'
    classical (permutation) action.  Generators must be signed
    permutations."""
    for g in gens.generators:
        if g.structure not in (SIGNED_PERMUTATION,):
            raise OperatorError("basis reachability needs signed-permutation generators")
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for i in frontier:
            for g in gens.generators:
                j = int(g.dest[i])
                if j not in dist:
                    dist[j] = dist[i] + 1
                    nxt.append(j)
        frontier = nxt
    return dist


def _resolve_edge(board: BoardSpec, edge: tuple[int, int] | str):
    if isinstance(edge, str):
        e = board.edge_by_label(edge)
        return e.sites, edge
    if not board.has_edge(edge):
        raise BoardError(f"edge {edge} not in board")
    for e in board.edges:
        if tuple(sorted(e.sites)) == tuple(sorted(edge)):
            return e.sites, (e.label or f"{e.a}-{e.b}")
    raise BoardError(f"edge {edge} not in board")


def dump_fixture(ops: list[MoveOperator], path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump([op.to_json() for op in ops], fh, indent=1)


def load_fixture(path: str | Path) -> list[MoveOperator]:
    with open(path) as fh:
        return [MoveOperator.from_json(obj) for obj in json.load(fh)]
