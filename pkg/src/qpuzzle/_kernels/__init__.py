"""Backend selection for the solver hot loops.

Prefers the compiled Cython kernels; falls back to pure numpy when the
extension was not built.  ``QPUZZLE_BACKEND=numpy`` forces the fallback
(used by the backend benchmark and tests)."""

from __future__ import annotations

import os

if os.environ.get("QPUZZLE_BACKEND") == "numpy":
    from . import _numpy_backend as _impl
else:
    try:
        from . import _cykernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _numpy_backend as _impl

BACKEND = _impl.NAME
apply_signed_perm_batch = _impl.apply_signed_perm_batch
apply_root_mixture_batch = _impl.apply_root_mixture_batch
apply_diagonal_batch = _impl.apply_diagonal_batch
canonicalize_round_batch = _impl.canonicalize_round_batch


def apply_operator_batch(op, states):
    """Apply a MoveOperator to a batch of states using its structure tag."""
    from ..operators import DIAGONAL_PHASE, ROOT_MIXTURE, SIGNED_PERMUTATION

    if op.structure == SIGNED_PERMUTATION:
        return apply_signed_perm_batch(states, op.dest, op.phase)
    if op.structure == ROOT_MIXTURE:
        c, s = op.mix
        return apply_root_mixture_batch(states, op.dest, op.phase, c, s)
    if op.structure == DIAGONAL_PHASE:
        return apply_diagonal_batch(states, op.phase)
    return states @ op.matrix.T
