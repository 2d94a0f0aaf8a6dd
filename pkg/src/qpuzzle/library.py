"""Standard board definitions: the 2x2 slide family, n x m grids, and the
2x2x1 cube in its 3-cubie presentation.

The 2x2 two-color slide boards and the cube pin a fixed basis order so the
generated move matrices agree entry-for-entry with the published
fixtures.  Site numbering for the 2x2 board is 0=top-left, 1=top-right,
2=bottom-left, 3=bottom-right; the edge labeled "R" swaps sites (0, 2) and
"L" swaps (1, 3), which is the handedness the fixture matrices encode.
"""

from __future__ import annotations

from .boards import BoardSpec, ColorSpec, Edge, Statistics

GREEN, BLUE, YELLOW, RED = 0, 1, 2, 3

# Basis order for the two-color 2x2 boards (green=0, blue=1): the solved
# state first, then its color mirror, then the columns/rows/diagonal pairs.
SLIDE_2X2_BASIS = (
    (0, 0, 1, 1),
    (1, 1, 0, 0),
    (1, 0, 1, 0),
    (0, 1, 0, 1),
    (1, 0, 0, 1),
    (0, 1, 1, 0),
)

_SLIDE_2X2_EDGES = (
    Edge(0, 1, "U"),
    Edge(2, 3, "D"),
    Edge(1, 3, "L"),
    Edge(0, 2, "R"),
)

_SLIDE_2X2_LAYOUT = ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0))


def slide_2x2(
    statistics: Statistics | tuple[Statistics, Statistics] = Statistics.FERMION,
    diagonals: bool = False,
) -> BoardSpec:
    """2x2 slide board, two green + two blue particles.

    ``statistics`` may be a single value for both colors or a (green, blue)
    pair for mixed-statistics variants.  ``diagonals`` adds the two diagonal
    swap edges used by the mixed-statistics universality construction.
    """
    if isinstance(statistics, Statistics):
        stats = (statistics, statistics)
    else:
        stats = statistics
    edges = _SLIDE_2X2_EDGES
    if diagonals:
        edges = edges + (Edge(0, 3, "X1"), Edge(1, 2, "X2"))
    tag = "-".join(s.value[0] for s in stats)
    return BoardSpec(
        n_sites=4,
        edges=edges,
        colors=(ColorSpec(GREEN, 2, stats[0]), ColorSpec(BLUE, 2, stats[1])),
        layout=_SLIDE_2X2_LAYOUT,
        basis_order=SLIDE_2X2_BASIS,
        name=f"2x2-{tag}" + ("-diag" if diagonals else ""),
    )


def slide_2x2_colors(
    counts: tuple[int, ...], statistics: Statistics = Statistics.FERMION
) -> BoardSpec:
    """2x2 board with an arbitrary color split of the four particles.

    Used by the dimension-scaling study: counts (3,1), (2,2), (2,1,1) and
    (1,1,1,1) give qudit dimensions 4, 6, 12, 24.
    """
    colors = tuple(ColorSpec(cid, n, statistics) for cid, n in enumerate(counts))
    return BoardSpec(
        n_sites=4,
        edges=_SLIDE_2X2_EDGES,
        colors=colors,
        layout=_SLIDE_2X2_LAYOUT,
        name="2x2-" + "".join(str(n) for n in counts),
    )


def line_board(
    n: int, statistics: Statistics = Statistics.BOSON
) -> BoardSpec:
    """n x 1 board with one green and n-1 blue particles; dimension n.

    Lexicographic enumeration puts the green particle at site i in basis
    state |i>, so the solved state |0> has the green particle first.
    """
    if n < 2:
        raise ValueError("line board needs at least 2 sites")
    edges = tuple(Edge(i, i + 1, f"S{i}") for i in range(n - 1))
    return BoardSpec(
        n_sites=n,
        edges=edges,
        colors=(ColorSpec(GREEN, 1, statistics), ColorSpec(BLUE, n - 1, statistics)),
        layout=tuple((float(i), 0.0) for i in range(n)),
        name=f"{n}x1",
    )


def grid_board(
    rows: int,
    cols: int,
    counts: tuple[int, ...],
    statistics: Statistics = Statistics.BOSON,
) -> BoardSpec:
    """rows x cols grid with nearest-neighbor edges, colors 0..m-1."""
    n = rows * cols
    if sum(counts) != n:
        raise ValueError(f"counts {counts} do not fill {rows}x{cols} grid")
    edges = []
    for r in range(rows):
        for c in range(cols):
            s = r * cols + c
            if c + 1 < cols:
                edges.append(Edge(s, s + 1, f"H{r}{c}"))
            if r + 1 < rows:
                edges.append(Edge(s, s + cols, f"V{r}{c}"))
    colors = tuple(ColorSpec(cid, k, statistics) for cid, k in enumerate(counts))
    return BoardSpec(
        n_sites=n,
        edges=tuple(edges),
        colors=colors,
        layout=tuple((float(c), float(r)) for r in range(rows) for c in range(cols)),
        name=f"{rows}x{cols}-" + "".join(str(k) for k in counts),
    )


# The 2x2x1 cube in its 3-cubie presentation: one cubie is held fixed and
# the other three stack into a 3x1 arrangement of distinguishable pieces.
# The U move swaps the top two, R swaps the bottom two.  The basis order is
# pinned so the permutation matrices match the published cube fixtures
# (P_U|0>=|1>, P_R|0>=|2>, etc.).
CUBE_BASIS = (
    (0, 1, 2),
    (1, 0, 2),
    (0, 2, 1),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
)


def cube_board() -> BoardSpec:
    return BoardSpec(
        n_sites=3,
        edges=(Edge(0, 1, "U"), Edge(1, 2, "R")),
        colors=tuple(ColorSpec(cid, 1, Statistics.BOSON) for cid in range(3)),
        layout=((0.0, 0.0), (0.0, 1.0), (0.0, 2.0)),
        basis_order=CUBE_BASIS,
        name="cube-2x2x1",
    )


def standard_boards() -> dict[str, BoardSpec]:
    """The board library shipped with the package."""
    boards = {
        "2x2_fermion": slide_2x2(Statistics.FERMION),
        "2x2_boson": slide_2x2(Statistics.BOSON),
        "2x2_mixed": slide_2x2((Statistics.FERMION, Statistics.BOSON)),
        "2x2_mixed_diag": slide_2x2((Statistics.FERMION, Statistics.BOSON), diagonals=True),
        "2x2_31": slide_2x2_colors((3, 1)),
        "2x2_211": slide_2x2_colors((2, 1, 1)),
        "2x2_1111": slide_2x2_colors((1, 1, 1, 1)),
        "2x3_33": grid_board(2, 3, (3, 3)),
        "2x3_222": grid_board(2, 3, (2, 2, 2)),
        "cube": cube_board(),
    }
    for n in range(2, 6):
        boards[f"{n}x1"] = line_board(n)
    return boards
