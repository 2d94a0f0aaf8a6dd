"""Command-line front door: dimensions, operator dumps, interactive play,
solving, benchmarks, universality checks, and the session service."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .boards import BoardSpec, enumerate_basis, qudit_dimension
from .library import standard_boards
from .operators import (
    GateSet,
    basis_reachability,
    build_cube_family,
    build_phase_gate,
    combined_set,
    root_set,
    swap_set,
)
from .simulator import GameSession, RefereeConfig
from .solvers import (
    ScrambleSpec,
    SearchBudgetExceeded,
    UnreachableScramble,
    advantage_study,
    run_benchmark,
    scramble,
    solve_classical,
    solve_combined,
    solve_quantum,
)
from .universality import WitnessBudget, check_universal


def _fail(message: str, code: int = 1) -> None:
    json.dump({"error": message}, sys.stderr)
    sys.stderr.write("\n")
    raise SystemExit(code)


def _load_board(board: str) -> BoardSpec:
    path = Path(board)
    if path.exists():
        return BoardSpec.load(path)
    library = standard_boards()
    if board in library:
        return library[board]
    _fail(f"no board file or library board named {board!r}")


@click.group()
def main() -> None:
    """Quantum permutation puzzle toolkit."""


@main.command()
@click.option("--board", required=True, help="Board JSON file or library name.")
def dims(board: str) -> None:
    """Print the qudit dimension of a board."""
    spec = _load_board(board)
    click.echo(qudit_dimension(spec.n_sites, [c.count for c in spec.colors]))


@main.command()
@click.option("--board", required=True)
@click.option("--op", "op_label", default=None, help="Single operator label, e.g. S_U.")
@click.option(
    "--set", "which", type=click.Choice(["swaps", "roots", "combined"]), default="swaps"
)
def matrices(board: str, op_label: str | None, which: str) -> None:
    """Dump operator matrices in the fixture JSON format."""
    space = enumerate_basis(_load_board(board))
    gens = {"swaps": swap_set, "roots": root_set, "combined": combined_set}[which](space)
    if op_label is not None:
        try:
            click.echo(json.dumps(gens.by_label(op_label).to_json(), indent=1))
        except Exception:
            _fail(f"no operator labeled {op_label!r} in the {which} set")
    else:
        click.echo(json.dumps([g.to_json() for g in gens.generators], indent=1))


@main.command()
@click.option("--board", required=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--len-min", default=200, show_default=True)
@click.option("--len-max", default=500, show_default=True)
@click.option(
    "--classical-strategy", type=click.Choice(["optimal", "greedy"]), default="optimal"
)
def solve(board: str, seed: int, len_min: int, len_max: int, classical_strategy: str) -> None:
    """Scramble once and run all three solvers."""
    space = enumerate_basis(_load_board(board))
    roots = root_set(space)
    state = scramble(
        ScrambleSpec(generator_set=roots, seed=seed, len_min=len_min, len_max=len_max),
        space,
    )
    out = {"board": board, "seed": seed, "plans": {}}
    solvers = {
        "classical": lambda: solve_classical(
            state, space, swap_set(space), strategy=classical_strategy
        ),
        "quantum": lambda: solve_quantum(state, space, roots),
        "combined": lambda: solve_combined(state, space, combined_set(space)),
    }
    for name, run in solvers.items():
        try:
            plan = run()
            out["plans"][name] = {
                "word": list(plan.word), "M": plan.M, "P": plan.P,
                "expected_cost": plan.expected_cost,
            }
        except (SearchBudgetExceeded, UnreachableScramble) as exc:
            out["plans"][name] = {"error": str(exc)}
    click.echo(json.dumps(out, indent=1))


@main.command()
@click.option("--board", required=True)
@click.option("--trials", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--len-min", default=200, show_default=True)
@click.option("--len-max", default=500, show_default=True)
@click.option("--out", "out_dir", default=None, help="Directory for CSV + aggregate JSON.")
@click.option("--workers", default=1, show_default=True)
@click.option(
    "--classical-strategy", type=click.Choice(["greedy", "optimal"]), default="greedy"
)
def bench(
    board: str, trials: int, seed: int, len_min: int, len_max: int,
    out_dir: str | None, workers: int, classical_strategy: str,
) -> None:
    """Monte Carlo benchmark of the three solvers."""
    report = run_benchmark(
        _load_board(board), trials, seed=seed, len_min=len_min, len_max=len_max,
        out_dir=out_dir, workers=workers, classical_strategy=classical_strategy,
    )
    errors = sum(1 for r in report.records if r.error is not None)
    click.echo(json.dumps({"means": report.means, "trials": trials, "errors": errors}, indent=1))


@main.command()
@click.option("--board", required=True)
@click.option("--with-phase-gate", is_flag=True, help="Append the single-state phase gate.")
@click.option("--budget", default=200_000, show_default=True, help="Power-scan budget.")
def universality(board: str, with_phase_gate: bool, budget: int) -> None:
    """Run the two-step numerical universality check."""
    space = enumerate_basis(_load_board(board))
    gens = root_set(space)
    if with_phase_gate:
        gens = GateSet(gens.generators + (build_phase_gate(space, space.dim - 1),))
    report = check_universal(gens, budget=WitnessBudget(max_power=budget))
    payload = {
        "infinite": report.infinite,
        "inconclusive": report.infinite is None,
        "witness": None,
        "commutant_dim": report.commutant_dim,
        "universal": report.universal,
    }
    if report.witness is not None:
        payload["witness"] = {
            "word1": list(report.witness.word_1),
            "word2": list(report.witness.word_2),
            "dist1": report.witness.dist_1,
            "dist2": report.witness.dist_2,
            "comm_norm": report.witness.commutator_norm,
        }
    click.echo(json.dumps(payload, indent=1))


@main.command()
@click.option("--gods-number", is_flag=True, help="Print the classical God's number.")
@click.option("--table", is_flag=True, help="Print per-state classical distances.")
def cube(gods_number: bool, table: bool) -> None:
    """The 2x2x1 cube family."""
    space, p_u, p_r, q_u, q_r = build_cube_family()
    dists = basis_reachability(GateSet((p_u, p_r)), 0)
    if gods_number:
        click.echo(max(dists.values()))
        return
    if table:
        for i, b in enumerate(space.basis):
            click.echo(f"{b}\t{dists[i]}")
        return
    click.echo(json.dumps({
        "dim": space.dim,
        "gods_number": max(dists.values()),
        "moves": [g.label for g in (p_u, p_r, q_u, q_r)],
    }, indent=1))


@main.command()
@click.option("--board", required=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--len-min", default=200, show_default=True)
@click.option("--len-max", default=500, show_default=True)
@click.option("--rng-seed", default=0, show_default=True)
def play(board: str, seed: int, len_min: int, len_max: int, rng_seed: int) -> None:
    """Interactive terminal session.

    Commands: a move label (e.g. H_R), 'measure', 'state', 'hint',
    'moves', 'quit'.
    """
    space = enumerate_basis(_load_board(board))
    moves = combined_set(space)
    state = scramble(
        ScrambleSpec(generator_set=root_set(space), seed=seed, len_min=len_min, len_max=len_max),
        space,
    )
    game = GameSession(space, RefereeConfig(0, state, rng_seed))

    def show() -> None:
        for i, b in enumerate(space.basis):
            p = game.current.probability(i)
            bar = "#" * int(round(p * 40))
            tag = " <- solved" if i == 0 else ""
            click.echo(f"|{b}>  p={p:.4f} {bar}{tag}")
        click.echo(f"moves: {game.moves_taken}  status: {game.status}")

    click.echo(f"board {board}, dim {space.dim}; type 'moves' for the move list")
    show()
    for line in sys.stdin:
        cmd = line.strip()
        if not cmd:
            continue
        if cmd in ("quit", "exit"):
            break
        try:
            if cmd == "measure":
                outcome = game.measure()
                click.echo(f"outcome |{space.basis[outcome]}> "
                           f"({'success' if game.status == 'solved' else 'reset'})")
                show()
                if game.status == "solved":
                    break
            elif cmd == "state":
                show()
            elif cmd == "moves":
                click.echo(" ".join(g.label for g in moves.generators))
            elif cmd == "hint":
                plan = solve_combined(game.current, space, moves)
                click.echo(
                    f"word {' '.join(plan.word) or '(measure now)'}; "
                    f"P={plan.P:.4f}; expected {plan.expected_cost:.2f}"
                )
            else:
                game.apply_move(moves.by_label(cmd))
                show()
        except Exception as exc:
            click.echo(f"error: {exc}")
    click.echo(f"final move count: {game.moves_taken}")


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--board-dir", default=None, help="Extra board JSON directory.")
@click.option("--no-hints", is_flag=True, help="Disable the hint endpoint.")
def serve(port: int, board_dir: str | None, no_hints: bool) -> None:
    """Start the local session service."""
    from .service import serve_sessions

    serve_sessions(port=port, board_dir=board_dir, hints=not no_hints)


@main.command()
@click.option("--family", type=click.Choice(["nx1", "2x2"]), required=True)
@click.option("--trials", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
def advantage(family: str, trials: int, seed: int) -> None:
    """Percent advantage of the quantum/combined solvers vs classical."""
    from .library import line_board, slide_2x2_colors

    if family == "nx1":
        boards = [line_board(n) for n in (2, 3, 4, 5)]
        rows = advantage_study(boards, trials, seed=seed)
    else:
        boards = [slide_2x2_colors(c) for c in ((3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))]
        rows = advantage_study(
            boards, trials, seed=seed, include=("classical", "combined")
        )
    click.echo(json.dumps(rows, indent=1))


if __name__ == "__main__":
    main()
