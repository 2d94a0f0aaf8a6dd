"""The compiled kernels and the pure-numpy fallback must be byte-for-byte
interchangeable on every primitive they share."""

import numpy as np
import pytest

from qpuzzle._kernels import _numpy_backend
from qpuzzle.boards import enumerate_basis
from qpuzzle.library import slide_2x2
from qpuzzle.operators import build_phase_gate, root_set, swap_set

try:
    from qpuzzle._kernels import _cykernels
except ImportError:  # pragma: no cover - extension not built
    _cykernels = None

pytestmark = pytest.mark.skipif(
    _cykernels is None, reason="compiled kernels not built"
)


@pytest.fixture(scope="module")
def batch():
    rng = np.random.default_rng(7)
    states = rng.normal(size=(64, 6)) + 1j * rng.normal(size=(64, 6))
    return states / np.linalg.norm(states, axis=1, keepdims=True)


@pytest.fixture(scope="module")
def ops():
    space = enumerate_basis(slide_2x2())
    return {
        "swap": swap_set(space).by_label("S_U"),
        "root": root_set(space).by_label("H_L"),
        "phase": build_phase_gate(space.dim, 2),
    }


def test_signed_perm_identical(batch, ops):
    op = ops["swap"]
    a = _cykernels.apply_signed_perm_batch(batch, op.dest, op.phase)
    b = _numpy_backend.apply_signed_perm_batch(batch, op.dest, op.phase)
    assert np.array_equal(a, b)


def test_root_mixture_close(batch, ops):
    op = ops["root"]
    c, s = op.mix
    a = _cykernels.apply_root_mixture_batch(batch, op.dest, op.phase, c, s)
    b = _numpy_backend.apply_root_mixture_batch(batch, op.dest, op.phase, c, s)
    assert np.max(np.abs(a - b)) < 1e-15


def test_diagonal_identical(batch, ops):
    op = ops["phase"]
    a = _cykernels.apply_diagonal_batch(batch, op.phase)
    b = _numpy_backend.apply_diagonal_batch(batch, op.phase)
    assert np.array_equal(a, b)


def test_canonicalize_bytes_identical(batch):
    # The search deduplicates on the raw bytes of these rows, so the two
    # backends must agree exactly, including the sign of zero.
    a = _cykernels.canonicalize_round_batch(batch)
    b = _numpy_backend.canonicalize_round_batch(batch)
    assert a.tobytes() == b.tobytes()


def test_canonicalize_no_negative_zero():
    states = np.array([[1.0 + 0j, -1e-16 + 0j, 0j, -0j, 1e-16j, -1e-16j]])
    for impl in (_cykernels, _numpy_backend):
        rows = impl.canonicalize_round_batch(states)
        assert not np.any(np.signbit(rows[np.abs(rows) == 0.0]))
