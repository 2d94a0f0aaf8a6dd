"""Shared fixtures: puzzle spaces, gate sets, and the hand-entered golden
matrices the generated operators are checked against.

The golden matrices are typed in directly (not loaded through the package's
own fixture serialization) so the comparison is independent of the code
under test.
"""

from __future__ import annotations

import numpy as np
import pytest

from qpuzzle.boards import Statistics, enumerate_basis
from qpuzzle.library import slide_2x2

# --- hand-entered golden matrices for the fermionic 2x2 board -------------
#
# Basis order: |0>=ggbb, |1>=bbgg, |2>=bgbg, |3>=gbgb, |4>=bggb, |5>=gbbg
# (g=0, b=1; sites: 0=top-left, 1=top-right, 2=bottom-left, 3=bottom-right).
# Edges: U=(0,1), D=(2,3), R=(0,2), L=(1,3).

S_U_FERMION = np.array(
    [
        [-1, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0],
    ],
    dtype=np.complex128,
)

S_D_FERMION = np.array(
    [
        [-1, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
    ],
    dtype=np.complex128,
)

S_R_FERMION = np.array(
    [
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, -1, 0, 0, 0],
        [0, 0, 0, -1, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
    ],
    dtype=np.complex128,
)

S_L_FERMION = np.array(
    [
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 0],
        [0, 0, -1, 0, 0, 0],
        [0, 0, 0, -1, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
    ],
    dtype=np.complex128,
)

GOLDEN_SWAPS_FERMION = {
    "S_U": S_U_FERMION,
    "S_D": S_D_FERMION,
    "S_L": S_L_FERMION,
    "S_R": S_R_FERMION,
}

# Bosonic counterparts: same support, every nonzero entry +1.
GOLDEN_SWAPS_BOSON = {
    label: np.abs(m).astype(np.complex128) for label, m in GOLDEN_SWAPS_FERMION.items()
}

# --- hand-entered cube permutations ---------------------------------------
#
# Basis order (three distinguishable cubies on a line): |0>=012, |1>=102,
# |2>=021, |3>=120, |4>=201, |5>=210.  U swaps the top two sites, R the
# bottom two.

P_U_CUBE = np.array(
    [
        [0, 1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
    ],
    dtype=np.complex128,
)

P_R_CUBE = np.array(
    [
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 0],
    ],
    dtype=np.complex128,
)


@pytest.fixture(scope="session")
def fermion_space():
    return enumerate_basis(slide_2x2(Statistics.FERMION))


@pytest.fixture(scope="session")
def boson_space():
    return enumerate_basis(slide_2x2(Statistics.BOSON))
