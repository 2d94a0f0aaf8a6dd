"""Quantum permutation puzzles with indistinguishable particles.

Boards of colored bosons/fermions map to qudits whose computational basis
is the set of distinguishable colorings; statistics-aware SWAPs and their
square roots are the moves; a referee measurement makes it a game, and
expected-cost-optimal solving makes it a laboratory.
"""

from .boards import (
    BasisState,
    BoardError,
    BoardSpec,
    ColorSpec,
    Edge,
    PuzzleSpace,
    Statistics,
    enumerate_basis,
    qudit_dimension,
)
from .operators import (
    GateSet,
    MoveOperator,
    OperatorError,
    build_cube_family,
    build_fractional_swap,
    build_phase_gate,
    build_root_swap,
    build_swap,
    combined_set,
    root_set,
    swap_set,
)
from .simulator import GameSession, QuditState, RefereeConfig, SimulatorError
from .solvers import (
    BenchmarkReport,
    ScrambleSpec,
    SolverPlan,
    advantage_study,
    run_benchmark,
    scramble,
    solve_classical,
    solve_combined,
    solve_quantum,
)
from .universality import UniversalityReport, check_universal

__version__ = "0.1.0"

__all__ = [
    "BasisState", "BoardError", "BoardSpec", "ColorSpec", "Edge",
    "PuzzleSpace", "Statistics", "enumerate_basis", "qudit_dimension",
    "GateSet", "MoveOperator", "OperatorError", "build_cube_family",
    "build_fractional_swap", "build_phase_gate", "build_root_swap",
    "build_swap", "combined_set", "root_set", "swap_set",
    "GameSession", "QuditState", "RefereeConfig", "SimulatorError",
    "BenchmarkReport", "ScrambleSpec", "SolverPlan", "advantage_study",
    "run_benchmark", "scramble", "solve_classical", "solve_combined",
    "solve_quantum", "UniversalityReport", "check_universal",
    "__version__",
]
