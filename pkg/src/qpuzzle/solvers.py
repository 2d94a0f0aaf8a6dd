"""Scramble generation and cost-optimal solving under the expected-cost
model E[X] = (M+1)/P: a plan applies M moves to the scramble and then
measures, repeating on failure, so the total move count is geometric.

The classical solver exploits that signed permutations only permute
amplitude magnitudes; its optimum is a closed form over breadth-first
distances.  The quantum and combined solvers run an exact breadth-first
word search with the admissible bound that a word of length L can never
beat cost L+1, deduplicating states up to global phase.
"""

from __future__ import annotations

import csv
import heapq
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels as K
from .boards import BoardSpec, PuzzleSpace, enumerate_basis
from .operators import (
    ROOT_MIXTURE,
    SIGNED_PERMUTATION,
    GateSet,
    MoveOperator,
    combined_set,
    root_set,
    swap_set,
)
from .simulator import QuditState

DEFAULT_NODE_CAP = 10_000_000
# Memory guard: one breadth-first level may enumerate at most this many
# candidates (16-byte hash each) before the search gives up.
_LEVEL_CANDIDATE_CAP = 32_000_000
_AMP_TOL = 1e-15
_COST_EPS = 1e-12


class SearchBudgetExceeded(RuntimeError):
    pass


class UnreachableScramble(RuntimeError):
    pass


@dataclass(frozen=True)
class SolverPlan:
    word: tuple[str, ...]
    M: int
    P: float

    def __post_init__(self):
        if self.P <= 0:
            raise ValueError("plan success probability must be positive")

    @property
    def expected_cost(self) -> float:
        return (self.M + 1) / self.P


@dataclass(frozen=True)
class ScrambleSpec:
    """Uniform-integer scramble length over [len_min, len_max], applied as
    that many uniformly chosen generators."""

    generator_set: GateSet
    seed: int
    len_min: int = 200
    len_max: int = 500

    def __post_init__(self):
        if self.len_min < 0 or self.len_max < self.len_min:
            raise ValueError("invalid scramble length range")


def scramble(spec: ScrambleSpec, space: PuzzleSpace, solved_index: int = 0) -> QuditState:
    rng = np.random.default_rng(spec.seed)
    length = int(rng.integers(spec.len_min, spec.len_max + 1))
    gens = spec.generator_set.generators
    amps = np.zeros(space.dim, dtype=np.complex128)
    amps[solved_index] = 1.0
    for gi in rng.integers(0, len(gens), size=length):
        amps = gens[gi].apply(amps)
    return QuditState(amps)


def classical_distances(
    swaps: GateSet, solved_index: int
) -> dict[int, tuple[int, tuple[str, ...]]]:
    """For each basis index i, the minimal word length and the
    lexicographically-first word of that length carrying i to the solved
    index under the classical permutation action."""
    for g in swaps.generators:
        if g.structure != SIGNED_PERMUTATION:
            raise ValueError("classical solver requires signed-permutation moves")
    d = swaps.dim
    inv_dest = []
    for g in swaps.generators:
        inv = np.empty(d, dtype=np.int64)
        inv[g.dest] = np.arange(d)
        inv_dest.append(inv)
    # BFS from the solved index over inverse actions; expanding parents in
    # word order keeps every recorded word lexicographically minimal.
    words: dict[int, tuple[int, tuple[str, ...]]] = {solved_index: (0, ())}
    frontier = [solved_index]
    while frontier:
        nxt = []
        for i in frontier:
            depth, word = words[i]
            for g, inv in zip(swaps.generators, inv_dest):
                j = int(inv[i])
                if j not in words:
                    words[j] = (depth + 1, (g.label,) + word)
                    nxt.append(j)
        frontier = nxt
    return words


def solve_classical(
    scramble_state: QuditState,
    space: PuzzleSpace,
    swaps: GateSet,
    solved_index: int = 0,
    strategy: str = "optimal",
) -> SolverPlan:
    """Classical (SWAP-only) plan.

    ``optimal``: exact minimum of (dist(i)+1) / |amps[i]|^2 over basis
    states i.  ``greedy``: move the largest-magnitude amplitude onto the
    solved state -- the strategy whose average the published benchmark
    numbers reflect (slightly weaker than the exact optimum).
    """
    dists = classical_distances(swaps, solved_index)
    amps = scramble_state.amps
    candidates = []
    for i in range(space.dim):
        p = float(np.abs(amps[i]) ** 2)
        if p <= _AMP_TOL or i not in dists:
            continue
        depth, word = dists[i]
        candidates.append((i, p, depth, word))
    if not candidates:
        raise UnreachableScramble("no classical word reaches the solved state")
    if strategy == "greedy":
        # Largest amplitude wins; ties by shorter word, then word order.
        _, p, depth, word = min(candidates, key=lambda c: (-c[1], c[2], c[3]))
        plan = SolverPlan(word=word, M=depth, P=p)
    elif strategy == "optimal":
        best = min(candidates, key=lambda c: ((c[2] + 1) / c[1], c[2], c[3]))
        _, p, depth, word = best
        plan = SolverPlan(word=word, M=depth, P=p)
    else:
        raise ValueError(f"unknown classical strategy {strategy!r}")
    return _certify(plan, scramble_state, swaps, solved_index)


def _permutation_seed(
    scramble_state: QuditState, gens: GateSet, solved_index: int
) -> SolverPlan | None:
    """Cheap achievable plan used as the search's initial upper bound.

    Signed-permutation generators act on basis states as permutations (the
    sign is a global phase), and a pi/4 root applied twice equals its
    underlying SWAP up to global phase, so words built from these reach
    basis states exactly.  Dijkstra over basis indices then yields, for
    each basis state, a word mapping it onto the solved state; the best
    (length+1)/probability over the scramble's support is an upper bound
    that the exact search can only improve on.
    """
    actions = []
    for g in gens.generators:
        if g.structure == SIGNED_PERMUTATION:
            actions.append((g.dest, (g.label,)))
        elif g.structure == ROOT_MIXTURE and abs(g.mix[0] - g.mix[1]) < 1e-12:
            # dest holds the underlying SWAP's permutation; applying the
            # pi/4 root twice realizes it up to global phase.
            actions.append((g.dest, (g.label, g.label)))
    if not actions:
        return None
    dim = gens.dim
    dist = {solved_index: (0, ())}
    heap = [(0, solved_index)]
    while heap:
        cost, i = heapq.heappop(heap)
        if cost > dist[i][0]:
            continue
        word_i = dist[i][1]
        for dest, step in actions:
            for j in np.nonzero(dest == i)[0]:
                nc = cost + len(step)
                j = int(j)
                if j not in dist or nc < dist[j][0]:
                    dist[j] = (nc, step + word_i)
                    heapq.heappush(heap, (nc, j))
    probs = np.abs(scramble_state.amps) ** 2
    best = None
    for i, (length, word) in dist.items():
        if probs[i] > _AMP_TOL:
            cost = (length + 1) / probs[i]
            if best is None or cost < best[0]:
                best = (cost, word, float(probs[i]))
    if best is None:
        return None
    return SolverPlan(word=best[1], M=len(best[1]), P=best[2])


_HASH_MASK = np.uint64(0x3FFFFFFFFFFFFFFF)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MULT1 = np.uint64(0x9E3779B97F4A7C15)
_MULT2 = np.uint64(0xC2B2AE3D27D4EB4F)
_HASH_POWERS: dict[int, tuple[np.ndarray, np.ndarray]] = {}
_CHUNK_PARENTS = 1 << 16


def _hash_powers(k: int) -> tuple[np.ndarray, np.ndarray]:
    cached = _HASH_POWERS.get(k)
    if cached is None:
        pw1 = np.full(k, _MULT1, dtype=np.uint64)
        pw2 = np.full(k, _MULT2, dtype=np.uint64)
        pw1[0] = pw2[0] = 1
        np.multiply.accumulate(pw1, out=pw1)
        np.multiply.accumulate(pw2, out=pw2)
        cached = _HASH_POWERS[k] = (pw1, pw2)
    return cached


def _hash_rounded(rounded: np.ndarray) -> np.ndarray:
    """Collision-resistant 124-bit row hashes, packed as complex128.

    Each canonicalized row is mixed elementwise (splitmix-style) and folded
    with two independent position-weighted sums; both 62-bit halves are
    stored as the bit patterns of finite positive doubles, so numpy's
    lexicographic complex ordering gives a total order usable with sort,
    unique, and searchsorted.  At the default node cap the chance of any
    colliding pair is below 1e-22.
    """
    u = (rounded + 0.0).view(np.uint64)  # +0.0 folds -0.0 into +0.0
    v = u ^ (u >> np.uint64(33))
    pw1, pw2 = _hash_powers(u.shape[1])
    v1 = v * _MIX1
    v1 ^= v1 >> np.uint64(29)
    v2 = v * _MIX2
    v2 ^= v2 >> np.uint64(31)
    out = np.empty((u.shape[0], 2), dtype=np.uint64)
    out[:, 0] = (v1 * pw1).sum(axis=1, dtype=np.uint64) & _HASH_MASK
    out[:, 1] = (v2 * pw2).sum(axis=1, dtype=np.uint64) & _HASH_MASK
    return out.view(np.complex128).ravel()


def _support_distance_buckets(gens: GateSet, solved_index: int) -> np.ndarray:
    """Cumulative-probability bucket matrix for the admissible state bound.

    Basis state i can contribute amplitude to the solved state after t
    moves only if the support graph of the generators links them within t
    steps.  Returns a 0/1 matrix ``B`` of shape (diameter+1, d) with
    ``B[t, i] = 1`` iff dist(i -> solved) <= t, so ``B @ probs`` gives the
    cumulative probability reachable within each horizon.
    """
    d = gens.dim
    adj = np.zeros((d, d), dtype=bool)
    for g in gens.generators:
        adj |= np.abs(g.matrix) > 1e-12
    # dist[i]: fewest applications moving amplitude from i to solved.
    dist = np.full(d, d + 1, dtype=np.int64)
    dist[solved_index] = 0
    frontier = [solved_index]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for i in frontier:
            for j in np.nonzero(adj[i])[0]:
                if dist[j] > level:
                    dist[j] = level
                    nxt.append(int(j))
        frontier = nxt
    horizon = int(dist[dist <= d].max(initial=0))
    buckets = np.zeros((horizon + 1, d))
    for t in range(horizon + 1):
        buckets[t, dist <= t] = 1.0
    return buckets


def solve_search(
    scramble_state: QuditState,
    space: PuzzleSpace,
    gens: GateSet,
    solved_index: int = 0,
    node_cap: int = DEFAULT_NODE_CAP,
    max_depth: int | None = None,
    initial_plan: SolverPlan | None = None,
) -> SolverPlan:
    """Exact breadth-first optimum over all words in ``gens``.

    Any word of length L has expected cost at least L+1, so no level
    beyond ceil(best)-2 can improve the incumbent.  Each frontier state
    additionally carries the admissible bound min_t (L+t+1)/c_t, where
    c_t is its cumulative probability on basis states within support-graph
    distance t of the solved state (by Cauchy-Schwarz no t-move extension
    can exceed success probability c_t); states whose bound cannot beat
    the incumbent are not expanded.  States are deduplicated up to global
    phase, which also quotients the phase-periodicity of the root SWAPs.
    Candidates are generated in parent-chunks so peak memory stays
    bounded, and the visited structure stores 16-byte hashes rather than
    full state vectors."""
    d = space.dim
    n_gens = len(gens.generators)
    labels = gens.labels

    states = scramble_state.amps[None, :].copy()
    p0 = float(np.abs(states[0, solved_index]) ** 2)
    best_cost = 1.0 / p0 if p0 > _AMP_TOL else math.inf
    best_node = 0
    best_depth = 0
    seeded = False
    if initial_plan is not None and initial_plan.expected_cost < best_cost - _COST_EPS:
        best_cost = initial_plan.expected_cost
        seeded = True

    # Node bookkeeping for word reconstruction: node 0 is the scramble.
    parents = [np.array([-1], dtype=np.int64)]
    gen_ids = [np.array([-1], dtype=np.int64)]
    states_ids = np.zeros(1, dtype=np.int64)
    visited = np.sort(_hash_rounded(K.canonicalize_round_batch(states)))
    total_nodes = 1
    buckets = _support_distance_buckets(gens, solved_index)
    horizon_cost = np.arange(1, buckets.shape[0] + 1, dtype=np.float64)

    depth = 0
    while states.shape[0] > 0 and depth + 2 < best_cost - _COST_EPS:
        if max_depth is not None and depth >= max_depth:
            break
        n = states.shape[0]
        if n * n_gens > _LEVEL_CANDIDATE_CAP:
            raise SearchBudgetExceeded(
                f"level would enumerate {n * n_gens} candidate states"
            )
        # Candidate index r encodes (parent r // n_gens, generator
        # r % n_gens): parent-major, generator-minor, so candidate words
        # within the level are in lexicographic order.  First pass hashes
        # every candidate chunk by chunk without materializing them all.
        keys = np.empty(n * n_gens, dtype=np.complex128)
        for c0 in range(0, n, _CHUNK_PARENTS):
            blk = states[c0 : c0 + _CHUNK_PARENTS]
            hi = c0 + blk.shape[0]
            for gi, g in enumerate(gens.generators):
                rounded = K.canonicalize_round_batch(K.apply_operator_batch(g, blk))
                keys[c0 * n_gens + gi : hi * n_gens : n_gens] = _hash_rounded(rounded)

        # Dedup within the level (first occurrence wins, preserving word
        # order), then against all previous levels.
        uniq, first_idx = np.unique(keys, return_index=True)
        if visited.size:
            pos = np.minimum(np.searchsorted(visited, uniq), visited.size - 1)
            fresh = visited[pos] != uniq
        else:
            fresh = np.ones(uniq.size, dtype=bool)
        keep = first_idx[fresh]
        keep.sort()
        if keep.size == 0:
            break
        visited = np.sort(np.concatenate([visited, uniq[fresh]]))
        new_ids = np.arange(total_nodes, total_nodes + keep.size, dtype=np.int64)
        total_nodes += keep.size
        if total_nodes > node_cap:
            raise SearchBudgetExceeded(
                f"search expanded more than {node_cap} nodes"
            )
        # Second pass rebuilds only the surviving states.
        parent_local = keep // n_gens
        gen_local = keep % n_gens
        new_states = np.empty((keep.size, d), dtype=np.complex128)
        for gi, g in enumerate(gens.generators):
            sel = np.nonzero(gen_local == gi)[0]
            if sel.size:
                new_states[sel] = K.apply_operator_batch(g, states[parent_local[sel]])
        parents.append(states_ids[parent_local])
        gen_ids.append(gen_local)

        depth += 1
        level_probs = np.abs(new_states) ** 2
        probs = level_probs[:, solved_index]
        with np.errstate(divide="ignore"):
            costs = np.where(probs > _AMP_TOL, (depth + 1) / np.maximum(probs, _AMP_TOL), math.inf)
        row = int(np.argmin(costs))
        if costs[row] < best_cost - _COST_EPS:
            best_cost = float(costs[row])
            best_node = int(new_ids[row])
            best_depth = depth
            seeded = False
        # Admissible per-state pruning: extending this word by t moves
        # cannot exceed success probability c_t, so drop states whose best
        # conceivable cost cannot beat the incumbent.
        cumulative = level_probs @ buckets.T
        with np.errstate(divide="ignore"):
            lower = np.min(
                (depth + horizon_cost) / np.maximum(cumulative, _AMP_TOL), axis=1
            )
        live = lower < best_cost - _COST_EPS
        states = new_states[live]
        states_ids = new_ids[live]

    if seeded:
        return _certify(initial_plan, scramble_state, gens, solved_index)
    if math.isinf(best_cost):
        raise UnreachableScramble("search exhausted without reaching the solved state")
    # Reconstruct the winning word by chaining parent pointers.
    flat_parent = np.concatenate(parents)
    flat_gen = np.concatenate(gen_ids)
    word: list[str] = []
    node = best_node
    while node != 0:
        word.append(labels[int(flat_gen[node])])
        node = int(flat_parent[node])
    word.reverse()
    p = _replay_probability(tuple(word), scramble_state, gens, solved_index)
    plan = SolverPlan(word=tuple(word), M=best_depth, P=p)
    return _certify(plan, scramble_state, gens, solved_index)


def solve_quantum(
    scramble_state: QuditState, space: PuzzleSpace, roots: GateSet, solved_index: int = 0,
    node_cap: int = DEFAULT_NODE_CAP,
) -> SolverPlan:
    seed = _permutation_seed(scramble_state, roots, solved_index)
    return solve_search(
        scramble_state, space, roots, solved_index, node_cap, initial_plan=seed
    )


def solve_combined(
    scramble_state: QuditState, space: PuzzleSpace, all_moves: GateSet, solved_index: int = 0,
    node_cap: int = DEFAULT_NODE_CAP,
) -> SolverPlan:
    seed = _permutation_seed(scramble_state, all_moves, solved_index)
    return solve_search(
        scramble_state, space, all_moves, solved_index, node_cap, initial_plan=seed
    )


def _replay_probability(
    word: tuple[str, ...], scramble_state: QuditState, gens: GateSet, solved_index: int
) -> float:
    amps = scramble_state.amps.copy()
    for label in word:
        amps = gens.by_label(label).apply(amps)
    return float(np.abs(amps[solved_index]) ** 2)


def _certify(
    plan: SolverPlan, scramble_state: QuditState, gens: GateSet, solved_index: int
) -> SolverPlan:
    p = _replay_probability(plan.word, scramble_state, gens, solved_index)
    if abs(p - plan.P) > 1e-9:
        raise RuntimeError(
            f"plan certificate failed: replayed P={p}, claimed {plan.P}"
        )
    return plan


@dataclass
class BenchmarkRecord:
    seed: int
    scramble_len: int
    costs: dict[str, float]
    words: dict[str, tuple[str, ...]]
    error: str | None = None


@dataclass
class BenchmarkReport:
    records: list[BenchmarkRecord]
    means: dict[str, float] = field(init=False)

    def __post_init__(self):
        ok = [r for r in self.records if r.error is None]
        solvers = ok[0].costs.keys() if ok else []
        self.means = {
            s: float(np.mean([r.costs[s] for r in ok])) for s in solvers
        }

    def cdf(self, solver: str, points: int = 200) -> list[tuple[float, float]]:
        costs = sorted(r.costs[solver] for r in self.records if r.error is None)
        if not costs:
            return []
        qs = np.linspace(0, 1, points)
        return [(float(np.quantile(costs, q)), float(q)) for q in qs]


def _scramble_length(seed: int, len_min: int, len_max: int) -> int:
    return int(np.random.default_rng(seed).integers(len_min, len_max + 1))


def _solve_one(args) -> BenchmarkRecord:
    board, seed, len_min, len_max, node_cap, classical_strategy, include = args
    space = enumerate_basis(board)
    roots = root_set(space)
    swaps = swap_set(space)
    both = combined_set(space)
    spec = ScrambleSpec(generator_set=roots, seed=seed, len_min=len_min, len_max=len_max)
    st = scramble(spec, space)
    try:
        plans = {}
        if "classical" in include:
            plans["classical"] = solve_classical(st, space, swaps, strategy=classical_strategy)
        if "quantum" in include:
            plans["quantum"] = solve_quantum(st, space, roots, node_cap=node_cap)
        if "combined" in include:
            plans["combined"] = solve_combined(st, space, both, node_cap=node_cap)
    except (SearchBudgetExceeded, UnreachableScramble) as exc:
        return BenchmarkRecord(
            seed=seed, scramble_len=_scramble_length(seed, len_min, len_max),
            costs={}, words={}, error=str(exc),
        )
    return BenchmarkRecord(
        seed=seed,
        scramble_len=_scramble_length(seed, len_min, len_max),
        costs={k: p.expected_cost for k, p in plans.items()},
        words={k: p.word for k, p in plans.items()},
    )


def run_benchmark(
    board: BoardSpec,
    trials: int,
    seed: int = 0,
    len_min: int = 200,
    len_max: int = 500,
    out_dir: str | Path | None = None,
    workers: int = 1,
    node_cap: int = DEFAULT_NODE_CAP,
    classical_strategy: str = "greedy",
    include: tuple[str, ...] = ("classical", "quantum", "combined"),
) -> BenchmarkReport:
    """Monte Carlo study: ``trials`` scrambles, the solvers named in
    ``include`` on each.

    The classical column defaults to the greedy largest-amplitude strategy,
    which is what the published averages correspond to; pass
    ``classical_strategy="optimal"`` for the exact classical optimum.
    Per-record seeds derive deterministically from the top seed, so results
    do not depend on worker scheduling."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    record_seeds = [
        int(ss.generate_state(1)[0]) for ss in np.random.SeedSequence(seed).spawn(trials)
    ]
    args = [
        (board, s, len_min, len_max, node_cap, classical_strategy, include)
        for s in record_seeds
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_solve_one, args, chunksize=16))
    else:
        records = [_solve_one(a) for a in args]
    report = BenchmarkReport(records=records)
    if out_dir is not None:
        _write_report(report, Path(out_dir))
    return report


def _write_report(report: BenchmarkReport, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "benchmark.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        solvers = [s for s in ("classical", "quantum", "combined") if s in report.means]
        w.writerow(
            ["seed", "scramble_len"]
            + [f"{s}_cost" for s in solvers]
            + [f"{s}_word" for s in solvers]
            + ["error"]
        )
        for r in report.records:
            if r.error is not None:
                w.writerow([r.seed, r.scramble_len] + [""] * (2 * len(solvers)) + [r.error])
                continue
            w.writerow(
                [r.seed, r.scramble_len]
                + [r.costs[s] for s in solvers]
                + [" ".join(r.words[s]) for s in solvers]
                + [""]
            )
    agg = {
        "means": report.means,
        "cdf": {s: report.cdf(s) for s in report.means},
        "errors": sum(1 for r in report.records if r.error is not None),
    }
    with open(out_dir / "aggregate.json", "w") as fh:
        json.dump(agg, fh, indent=1)


def advantage_study(
    boards: list[BoardSpec],
    trials: int,
    seed: int = 0,
    len_min: int = 200,
    len_max: int = 500,
    dim_cap: int = 200,
    workers: int = 1,
    node_cap: int = DEFAULT_NODE_CAP,
    classical_strategy: str = "optimal",
    include: tuple[str, ...] = ("classical", "quantum", "combined"),
) -> list[dict]:
    """Mean expected cost per solver and percent difference vs classical
    for each board; negative percent means the solver beats classical.

    The baseline defaults to the exact classical optimum (strategy
    ``"optimal"``) so that percent differences compare best-vs-best."""
    rows = []
    for bi, board in enumerate(boards):
        space = enumerate_basis(board)
        if space.dim > dim_cap:
            rows.append({"board": board.name, "dim": space.dim, "skipped": True})
            continue
        report = run_benchmark(
            board, trials, seed=seed + bi, len_min=len_min, len_max=len_max,
            workers=workers, node_cap=node_cap, classical_strategy=classical_strategy,
            include=include,
        )
        cl = report.means["classical"]
        row = {
            "board": board.name,
            "dim": space.dim,
            "skipped": False,
            "means": report.means,
            "errors": sum(1 for r in report.records if r.error is not None),
        }
        for solver in ("quantum", "combined"):
            if solver in report.means:
                row[f"{solver}_pct"] = (report.means[solver] - cl) / cl * 100.0
        rows.append(row)
    return rows
