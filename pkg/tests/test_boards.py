"""Board validation, basis enumeration, and dimension formulas."""

import json
import math
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from qpuzzle.boards import (
    BasisState,
    BoardError,
    BoardSpec,
    ColorSpec,
    Edge,
    Statistics,
    enumerate_basis,
    qudit_dimension,
)
from qpuzzle.library import (
    cube_board,
    grid_board,
    line_board,
    slide_2x2,
    slide_2x2_colors,
    standard_boards,
)

BOARD_DIR = Path(__file__).resolve().parent.parent / "boards"


class TestQuditDimension:
    def test_2x2_two_color(self):
        assert qudit_dimension(4, (2, 2)) == 6

    def test_3x3_three_color(self):
        assert qudit_dimension(9, (3, 3, 3)) == 1680

    def test_all_identical(self):
        assert qudit_dimension(4, (4,)) == 1

    def test_2x2_color_splits(self):
        dims = [qudit_dimension(4, c) for c in ((3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))]
        assert dims == [4, 6, 12, 24]

    def test_counts_must_sum(self):
        with pytest.raises(BoardError):
            qudit_dimension(4, (2, 3))

    def test_exact_big_integers(self):
        # 36 sites, 36 distinct colors: 36! overflows 64-bit by far.
        assert qudit_dimension(36, (1,) * 36) == math.factorial(36)

    @given(st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=5))
    def test_matches_multinomial(self, counts):
        n = sum(counts)
        expected = math.factorial(n)
        for c in counts:
            expected //= math.factorial(c)
        assert qudit_dimension(n, counts) == expected

    def test_even_grid_two_color_binomial(self):
        for n in (2, 4):
            sites = n * n
            assert qudit_dimension(sites, (sites // 2, sites // 2)) == math.comb(
                sites, sites // 2
            )

    def test_n_color_grid_formula(self):
        for n in (2, 3):
            sites = n * n
            assert qudit_dimension(sites, (n,) * n) == (
                math.factorial(sites) // math.factorial(n) ** n
            )


class TestBoardSpec:
    def test_rejects_zero_sites(self):
        with pytest.raises(BoardError):
            BoardSpec(n_sites=0, edges=(), colors=())

    def test_rejects_count_mismatch(self):
        with pytest.raises(BoardError):
            BoardSpec(
                n_sites=3,
                edges=(Edge(0, 1),),
                colors=(ColorSpec(0, 2, Statistics.BOSON),),
            )

    def test_rejects_self_edge(self):
        with pytest.raises(BoardError):
            BoardSpec(
                n_sites=2,
                edges=(Edge(1, 1),),
                colors=(ColorSpec(0, 2, Statistics.BOSON),),
            )

    def test_rejects_out_of_range_edge(self):
        with pytest.raises(BoardError):
            BoardSpec(
                n_sites=2,
                edges=(Edge(0, 5),),
                colors=(ColorSpec(0, 2, Statistics.BOSON),),
            )

    def test_rejects_duplicate_color_ids(self):
        with pytest.raises(BoardError):
            BoardSpec(
                n_sites=2,
                edges=(Edge(0, 1),),
                colors=(
                    ColorSpec(0, 1, Statistics.BOSON),
                    ColorSpec(0, 1, Statistics.BOSON),
                ),
            )

    def test_connectivity(self):
        assert slide_2x2().is_connected()
        disconnected = BoardSpec(
            n_sites=4,
            edges=(Edge(0, 1), Edge(2, 3)),
            colors=(ColorSpec(0, 4, Statistics.BOSON),),
        )
        assert not disconnected.is_connected()

    def test_json_round_trip(self):
        for name, board in standard_boards().items():
            again = BoardSpec.from_json(board.to_json(), name=name)
            assert again.n_sites == board.n_sites
            assert again.edges == board.edges
            assert again.colors == board.colors
            assert again.basis_order == board.basis_order

    def test_shipped_board_files_load(self):
        files = sorted(BOARD_DIR.glob("*.json"))
        assert len(files) >= 14
        for path in files:
            board = BoardSpec.load(path)
            space = enumerate_basis(board)
            assert space.dim >= 1

    def test_shipped_files_match_library(self):
        library = standard_boards()
        for name, board in library.items():
            path = BOARD_DIR / f"{name}.json"
            assert path.exists(), f"missing shipped board {name}"
            shipped = BoardSpec.load(path)
            assert enumerate_basis(shipped).basis == enumerate_basis(board).basis


class TestEnumerateBasis:
    def test_2x2_dim_six(self):
        assert enumerate_basis(slide_2x2()).dim == 6

    def test_single_site(self):
        board = BoardSpec(
            n_sites=1, edges=(), colors=(ColorSpec(0, 1, Statistics.BOSON),)
        )
        assert enumerate_basis(board).dim == 1

    def test_2x3_three_color_dim_90(self):
        assert enumerate_basis(grid_board(2, 3, (2, 2, 2))).dim == 90

    def test_no_duplicates_and_index_bijection(self):
        for board in (slide_2x2(), line_board(4), grid_board(2, 3, (3, 3))):
            space = enumerate_basis(board)
            words = [b.word for b in space.basis]
            assert len(set(words)) == space.dim
            for i, b in enumerate(space.basis):
                assert space.index_of(b) == i

    def test_deterministic_order(self):
        a = enumerate_basis(grid_board(2, 3, (2, 2, 2)))
        b = enumerate_basis(grid_board(2, 3, (2, 2, 2)))
        assert a.basis == b.basis

    def test_pinned_order_respected(self):
        space = enumerate_basis(slide_2x2())
        assert [str(b) for b in space.basis] == [
            "0011", "1100", "1010", "0101", "1001", "0110",
        ]

    def test_cube_pinned_order(self):
        space = enumerate_basis(cube_board())
        assert [str(b) for b in space.basis] == [
            "012", "102", "021", "120", "201", "210",
        ]

    def test_bad_pinned_order_rejected(self):
        board = slide_2x2()
        broken = BoardSpec(
            n_sites=board.n_sites,
            edges=board.edges,
            colors=board.colors,
            basis_order=board.basis_order[:-1] + ((0, 0, 0, 0),),
        )
        with pytest.raises(BoardError):
            enumerate_basis(broken)

    def test_line_board_green_position(self):
        # Lexicographic enumeration: basis |i> has the green particle at site i.
        space = enumerate_basis(line_board(4))
        for i, b in enumerate(space.basis):
            assert b.word.index(0) == i

    def test_basis_state_str(self):
        assert str(BasisState((0, 1, 1, 0))) == "0110"


def test_statistics_exchange_signs():
    assert Statistics.FERMION.exchange_sign == -1
    assert Statistics.BOSON.exchange_sign == 1
    assert Statistics.VACUUM.exchange_sign == 1


def test_standard_library_contents():
    library = standard_boards()
    for name in (
        "2x2_fermion", "2x2_boson", "2x2_mixed", "2x2_mixed_diag",
        "2x2_31", "2x2_211", "2x2_1111", "2x3_33", "2x3_222", "cube",
        "2x1", "3x1", "4x1", "5x1",
    ):
        assert name in library
    assert enumerate_basis(library["2x2_1111"]).dim == 24
    assert enumerate_basis(library["5x1"]).dim == 5
