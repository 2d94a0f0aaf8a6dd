"""Exponential-cost first-quantized certifier.

Expands a board state into its explicit (anti)symmetrized sum over
within-color particle-label permutations and computes inner products
term-by-term, using only the orthogonality of localized single-particle
wavefunctions.  This path is independent of the qudit matrix
representation and is used to certify orthonormality of the basis and the
sign conventions of the SWAP operators.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations

from .boards import BasisState, BoardSpec, BoardError, Statistics

# The expansion has prod(n_i!) terms; this is a test-time certifier, not a
# production path, so refuse unreasonably large colors outright.
MAX_COLOR_COUNT = 6


def _permutation_parity(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        cycle = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            cycle += 1
        if cycle % 2 == 0:
            sign = -sign
    return sign


def first_quantized_expansion(
    state: BasisState, board: BoardSpec
) -> dict[tuple[tuple[int, int], ...], int]:
    """Map from site-assignment terms to +-1 coefficients (unnormalized).

    A term assigns to each site a (color, particle label) pair.  Fermionic
    colors contribute the parity of their label permutation; bosons and
    vacuum contribute +1.
    """
    for c in board.colors:
        if c.count > MAX_COLOR_COUNT:
            raise BoardError(
                f"color {c.id} count {c.count} exceeds oracle cutoff {MAX_COLOR_COUNT}"
            )
    sites_by_color: dict[int, list[int]] = {c.id: [] for c in board.colors}
    for site, cid in enumerate(state.word):
        sites_by_color[cid].append(site)

    # Build the product over colors incrementally.
    partial: list[tuple[list[tuple[int, int]], int]] = [([(-1, -1)] * board.n_sites, 1)]
    for c in board.colors:
        sites = sites_by_color[c.id]
        fermionic = c.statistics is Statistics.FERMION
        new_partial = []
        for assign, coeff in partial:
            for perm in permutations(range(len(sites))):
                sign = _permutation_parity(perm) if fermionic else 1
                a2 = list(assign)
                for slot, label_idx in enumerate(perm):
                    a2[sites[slot]] = (c.id, label_idx)
                new_partial.append((a2, coeff * sign))
        partial = new_partial
    return {tuple(assign): coeff for assign, coeff in partial}


def _swap_term_sites(assign: tuple[tuple[int, int], ...], a: int, b: int):
    out = list(assign)
    out[a], out[b] = out[b], out[a]
    return tuple(out)


def oracle_overlap(a: BasisState, b: BasisState, board: BoardSpec) -> Fraction:
    """<a|b> computed from the explicit first-quantized expansions.

    Exact rational arithmetic: every expansion is a sum of prod(n_i!)
    orthonormal product terms, so the normalized overlap is the matched-term
    coefficient sum divided by prod(n_i!).
    """
    _check_same_board(a, b, board)
    ea = first_quantized_expansion(a, board)
    eb = first_quantized_expansion(b, board)
    norm = math.prod(math.factorial(c.count) for c in board.colors)
    acc = 0
    for term, coeff in eb.items():
        ca = ea.get(term)
        if ca is not None:
            acc += ca * coeff
    return Fraction(acc, norm)


def oracle_swap_matrix_element(
    a: BasisState, b: BasisState, edge: tuple[int, int], board: BoardSpec
) -> Fraction:
    """<a| SWAP_edge |b> via the first-quantized expansions.

    The swap exchanges the full contents of the two sites in every term of
    the expansion of |b>; any sign appears only through term matching
    against <a|, never through an imposed rule.
    """
    _check_same_board(a, b, board)
    ea = first_quantized_expansion(a, board)
    eb = first_quantized_expansion(b, board)
    norm = math.prod(math.factorial(c.count) for c in board.colors)
    i, j = edge
    acc = 0
    for term, coeff in eb.items():
        ca = ea.get(_swap_term_sites(term, i, j))
        if ca is not None:
            acc += ca * coeff
    return Fraction(acc, norm)


def oracle_swap_sign(
    state: BasisState, edge: tuple[int, int], board: BoardSpec
) -> tuple[BasisState, int]:
    """Exchange the two site entries; -1 phase iff two identical fermions.

    Bosons, vacuum, and distinguishable pairs swap without a phase.
    """
    if not board.has_edge(edge):
        raise BoardError(f"edge {edge} not in board")
    i, j = edge
    word = list(state.word)
    phase = 1
    if word[i] == word[j]:
        if board.color(word[i]).statistics is Statistics.FERMION:
            phase = -1
        return state, phase
    word[i], word[j] = word[j], word[i]
    return BasisState(tuple(word)), phase


def oracle_edge_gauge(board: BoardSpec, edge: tuple[int, int]) -> list[int]:
    """Per-basis-state signs sigma with pair_rule[j, i] = sigma_j sigma_i
    oracle[j, i] for this edge's SWAP.

    The pair-exchange rule (identical fermions -> -1, else +1) and the
    explicit first-quantized matrix element differ only by a relabeling
    convention for each basis ket; this computes that convention edge by
    edge and verifies it on every entry, certifying that the two
    derivations describe the same unitary.  Raises if they do not.
    """
    from .boards import enumerate_basis  # local import: avoid cycle at module load

    space = enumerate_basis(board)
    sigma = [0] * space.dim
    for i, state in enumerate(space.basis):
        if sigma[i] != 0:
            continue
        sigma[i] = 1
        dest, naive = oracle_swap_sign(state, edge, board)
        j = space.index_of(dest)
        if j == i:
            continue
        raw = oracle_swap_matrix_element(dest, state, edge, board)
        sigma[j] = naive * (1 if raw == 1 else -1)
    # Full verification: every entry of the pair-rule matrix equals the
    # gauge-transformed first-quantized matrix element.
    for i, state in enumerate(space.basis):
        dest, naive = oracle_swap_sign(state, edge, board)
        j = space.index_of(dest)
        raw = oracle_swap_matrix_element(dest, state, edge, board)
        if Fraction(naive) != sigma[j] * sigma[i] * raw:
            raise BoardError(
                f"pair rule and first-quantized element disagree beyond gauge "
                f"on edge {edge}, state {state}"
            )
    return sigma


def oracle_basis_gauge(board: BoardSpec) -> dict[tuple[int, ...], int]:
    """A single basis-sign convention aligning the pair-rule SWAPs of all
    edges with their first-quantized matrix elements simultaneously.

    Exists for boards whose colors share one statistics (propagated from
    the first basis state and then verified on every entry of every edge
    SWAP); raises for boards mixing fermionic and bosonic colors, where
    the two derivations are provably not jointly gauge-equivalent.
    """
    from .boards import enumerate_basis

    space = enumerate_basis(board)
    sigma: dict[int, int] = {0: 1}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            state = space.basis[i]
            for e in board.edges:
                dest, naive = oracle_swap_sign(state, e.sites, board)
                j = space.index_of(dest)
                raw = oracle_swap_matrix_element(dest, state, e.sites, board)
                s = sigma[i] * naive * (1 if raw == 1 else -1)
                if j not in sigma:
                    sigma[j] = s
                    nxt.append(j)
        frontier = nxt
    if len(sigma) != space.dim:
        raise BoardError("board's swap action is not transitive on the basis")
    for i, state in enumerate(space.basis):
        for e in board.edges:
            dest, naive = oracle_swap_sign(state, e.sites, board)
            j = space.index_of(dest)
            raw = oracle_swap_matrix_element(dest, state, e.sites, board)
            if Fraction(naive) != sigma[j] * sigma[i] * raw:
                raise BoardError(
                    "no single basis-sign convention aligns all edge SWAPs "
                    "with their first-quantized matrix elements"
                )
    return {space.basis[i].word: sigma[i] for i in range(space.dim)}


def _check_same_board(a: BasisState, b: BasisState, board: BoardSpec) -> None:
    counts = {c.id: c.count for c in board.colors}
    for s in (a, b):
        if len(s.word) != board.n_sites:
            raise BoardError(f"state {s} does not fit board with {board.n_sites} sites")
        got: dict[int, int] = {}
        for cid in s.word:
            got[cid] = got.get(cid, 0) + 1
        if got != counts:
            raise BoardError(f"state {s} has wrong color multiset for this board")
