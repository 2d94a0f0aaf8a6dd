"""Numerical gate-set universality: infinite-subgroup witnesses and the
adjoint-commutant triviality test.

A gate set is universal for a d-level qudit when the group it generates is
dense in SU(d).  The check used here has two parts: (1) the generated
subgroup is infinite, certified by exhibiting two non-commuting group
elements close to a scalar multiple of the identity; (2) the space of
matrices commuting with every generator's adjoint action is just the
scalars.  Witnesses are always re-verified at full precision before being
reported, so an "infinite" verdict is sound; search-budget exhaustion
yields "inconclusive", never a false claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from .boards import BoardSpec, enumerate_basis
from .linalg import dist_to_scalar, phase_key
from .operators import DENSE, GateSet, MoveOperator, build_root_swap

DELTA_SCALAR = 0.3          # Frobenius distance to the nearest scalar multiple of I
EPS_COMMUTATOR = 1e-6       # minimum commutator norm for a witness pair
RANK_CUT = 1e-8             # relative singular-value threshold for null spaces
COMMUTANT_TOL = 1e-9        # max-norm tolerance when verifying commutation


@dataclass(frozen=True)
class WitnessBudget:
    """Search budget for the infinite-subgroup check."""

    closure_cap: int = 4096       # BFS closure size before declaring "not finite here"
    max_seed_len: int = 2         # length of the seed words whose powers are scanned
    max_power: int = 200_000      # highest power scanned per seed word
    max_pairs: int = 64           # candidate seed pairs examined


@dataclass(frozen=True)
class InfinitenessWitness:
    word_1: tuple[str, ...]
    word_2: tuple[str, ...]
    dist_1: float
    dist_2: float
    commutator_norm: float


@dataclass(frozen=True)
class UniversalityReport:
    infinite: bool | None               # None = inconclusive
    witness: InfinitenessWitness | None
    commutant_dim: int
    universal: bool | None              # None when infiniteness is inconclusive
    generators_su_projected: tuple[MoveOperator, ...] = field(repr=False, default=())


def project_to_su(op: MoveOperator) -> MoveOperator:
    """Rescale by the principal d-th root of det so the determinant is 1.

    The applied scalar is ``det(U) ** (-1/d)`` (principal branch); it is
    recoverable from the input as that expression, and the projected matrix
    equals the input up to that global phase.
    """
    d = op.dim
    det = complex(np.linalg.det(op.matrix))
    scalar = det ** (-1.0 / d)
    m = op.matrix * scalar
    return MoveOperator(op.label, m, DENSE, move_cost=op.move_cost)


def su_projected_set(gens: GateSet) -> tuple[MoveOperator, ...]:
    return tuple(project_to_su(g) for g in gens.generators)


def _closure_is_finite(mats: list[np.ndarray], cap: int) -> bool:
    """BFS closure up to global phase; True iff it terminates within cap."""
    d = mats[0].shape[0]
    seen = {phase_key(np.eye(d).flatten())}
    frontier = [np.eye(d, dtype=np.complex128)]
    count = 1
    while frontier:
        nxt = []
        for m in frontier:
            for g in mats:
                nm = g @ m
                k = phase_key(nm.flatten())
                if k in seen:
                    continue
                seen.add(k)
                count += 1
                if count > cap:
                    return False
                nxt.append(nm)
        frontier = nxt
    return True


def _near_scalar_powers(m: np.ndarray, delta: float, max_power: int) -> list[tuple[int, float]]:
    """Powers ``k`` with dist_to_scalar(m^k) < delta, found via eigenphases.

    For unitary m with eigenvalues e^{i theta_j}, the distance of m^k to the
    scalars is sqrt(2 d - 2 |sum_j e^{i k theta_j}|), so the scan never
    forms the matrix powers.
    """
    theta = np.angle(np.linalg.eigvals(m))
    d = m.shape[0]
    ks = np.arange(1, max_power)
    traces = np.abs(np.exp(1j * np.outer(ks, theta)).sum(axis=1))
    dist2 = np.maximum(2 * d - 2 * traces, 0.0)
    hits = np.nonzero(dist2 < delta * delta)[0]
    return [(int(ks[i]), float(np.sqrt(dist2[i]))) for i in hits]


def _seed_words(labels: tuple[str, ...], max_len: int):
    """All nonempty words up to max_len, breadth-first, generator order."""
    frontier: list[tuple[str, ...]] = [()]
    for _ in range(max_len):
        frontier = [w + (lab,) for w in frontier for lab in labels]
        yield from frontier


def check_infinite(
    gens: GateSet,
    delta: float = DELTA_SCALAR,
    eps: float = EPS_COMMUTATOR,
    budget: WitnessBudget = WitnessBudget(),
) -> tuple[bool | None, InfinitenessWitness | None]:
    """Decide whether the generated subgroup of SU(d) is infinite.

    Returns ``(True, witness)`` with a re-verified pair of non-commuting
    near-scalar words, ``(False, None)`` when the phase-deduplicated closure
    terminates within budget, or ``(None, None)`` (inconclusive) when the
    budget is exhausted without either outcome.

    The witness search walks seed words breadth-first (generators in
    declared order) and scans powers of each seed through its eigenphases;
    a power landing within ``delta`` of the scalars joins the candidate
    pool, and the first candidate pair whose commutator norm exceeds
    ``eps`` — verified on the fully re-multiplied matrices — is returned.
    """
    projected = su_projected_set(gens)
    by_label = {g.label: g.matrix for g in projected}
    if _closure_is_finite(list(by_label.values()), budget.closure_cap):
        return False, None

    candidates: list[tuple[tuple[str, ...], np.ndarray, float]] = []
    for word in _seed_words(gens.labels, budget.max_seed_len):
        m = np.eye(gens.dim, dtype=np.complex128)
        for lab in word:
            m = by_label[lab] @ m
        for k, _ in _near_scalar_powers(m, delta, budget.max_power)[:4]:
            power = np.linalg.matrix_power(m, k)
            dist = dist_to_scalar(power)
            if dist >= delta:  # eigenphase estimate re-checked in full
                continue
            candidates.append((word * k, power, dist))
            break
        if len(candidates) >= budget.max_pairs:
            break

    for (w1, m1, d1), (w2, m2, d2) in combinations(candidates, 2):
        cnorm = float(np.linalg.norm(m1 @ m2 - m2 @ m1))
        if cnorm > eps:
            return True, InfinitenessWitness(w1, w2, d1, d2, cnorm)
    return None, None


def verify_witness(
    gens: GateSet,
    witness: InfinitenessWitness,
    delta: float = DELTA_SCALAR,
    eps: float = EPS_COMMUTATOR,
) -> bool:
    """Recompute both witness words from scratch and re-check thresholds."""
    by_label = {g.label: g.matrix for g in su_projected_set(gens)}

    def build(word):
        m = np.eye(gens.dim, dtype=np.complex128)
        for lab in word:
            m = by_label[lab] @ m
        return m

    m1, m2 = build(witness.word_1), build(witness.word_2)
    return (
        dist_to_scalar(m1) < delta
        and dist_to_scalar(m2) < delta
        and np.linalg.norm(m1 @ m2 - m2 @ m1) > eps
    )


def adjoint_commutant_dim(gens: GateSet) -> tuple[int, list[np.ndarray]]:
    """Dimension and orthonormal basis of {X : U X U† = X for all U}.

    The fixed-point equation U X U† = X is linear in X; vectorized it reads
    (U ⊗ conj(U) - I) vec(X) = 0, so the commutant is the joint null space
    of the stacked constraints, extracted by SVD with a relative rank cut.
    """
    d = gens.dim
    blocks = [np.kron(g.matrix, g.matrix.conj()) - np.eye(d * d) for g in gens.generators]
    stacked = np.vstack(blocks)
    _, s, vh = np.linalg.svd(stacked)
    cut = RANK_CUT * (s[0] if s.size else 1.0)
    null_dim = int(np.sum(s <= cut)) + (d * d - len(s) if stacked.shape[0] < d * d else 0)
    basis = [vh[i].reshape(d, d).conj() for i in range(len(s) - null_dim, len(s))]
    basis += [vh[i].reshape(d, d).conj() for i in range(len(s), d * d)]
    for x in basis:
        for g in gens.generators:
            resid = np.max(np.abs(g.matrix @ x @ g.matrix.conj().T - x))
            if resid > COMMUTANT_TOL:
                raise RuntimeError(f"commutant basis failed verification: {resid}")
    return null_dim, basis


def check_universal(
    gens: GateSet,
    delta: float = DELTA_SCALAR,
    eps: float = EPS_COMMUTATOR,
    budget: WitnessBudget = WitnessBudget(),
) -> UniversalityReport:
    """Universal iff the group is infinite and the adjoint commutant is
    scalars only; an inconclusive infiniteness check propagates."""
    infinite, witness = check_infinite(gens, delta, eps, budget)
    dim, _ = adjoint_commutant_dim(gens)
    universal: bool | None
    if infinite is None:
        universal = None
    else:
        universal = bool(infinite and dim == 1)
    return UniversalityReport(
        infinite=infinite,
        witness=witness,
        commutant_dim=dim,
        universal=universal,
        generators_su_projected=su_projected_set(gens),
    )


def commutant_family_2x2(a: complex, b: complex, c: complex) -> np.ndarray:
    """The three-parameter family spanning the commutant of the four
    square-root SWAPs on the two-colors-of-two 2x2 board.

    K(1,0,0) is the identity; K(0,1,0) is the color-SWAP permutation
    (an involution); K(0,0,1) is Hermitian but not unitary.
    """
    return np.array(
        [
            [a, b, -c, -c, c, c],
            [b, a, -c, -c, c, c],
            [-c, -c, a, b, c, c],
            [-c, -c, b, a, c, c],
            [c, c, c, c, a, b],
            [c, c, c, c, b, a],
        ],
        dtype=np.complex128,
    )


def color_permutation_commutants(board: BoardSpec) -> list[np.ndarray]:
    """Basis permutations induced by color relabelings that preserve both
    count and statistics, kept only if they commute with every square-root
    SWAP of the board.  The identity relabeling is excluded.
    """
    space = enumerate_basis(board)
    roots = [build_root_swap(space, e.sites) for e in board.edges]
    n_colors = len(board.colors)
    signature = [(c.count, c.statistics) for c in board.colors]
    out = []
    for perm in permutations(range(n_colors)):
        if perm == tuple(range(n_colors)):
            continue
        if any(signature[perm[i]] != signature[i] for i in range(n_colors)):
            continue
        p = np.zeros((space.dim, space.dim))
        for i, state in enumerate(space.basis):
            mapped = tuple(perm[color] for color in state.word)
            p[space.index[mapped], i] = 1.0
        if all(
            np.max(np.abs(r.matrix @ p - p @ r.matrix)) <= COMMUTANT_TOL for r in roots
        ):
            out.append(p)
    return out
