"""Small numeric helpers shared across modules: global-phase
canonicalization, phase-insensitive equality, and unitarity checks."""

from __future__ import annotations

import numpy as np

UNITARITY_TOL = 1e-12
PHASE_EQ_TOL = 1e-9
_SUPPORT_TOL = 1e-8


def canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a complex vector (or flattened matrix) so its first
    significant entry is real-positive."""
    flat = np.ravel(v)
    idx = np.flatnonzero(np.abs(flat) > _SUPPORT_TOL)
    if idx.size == 0:
        return v.copy()
    pivot = flat[idx[0]]
    return v * (np.abs(pivot) / pivot)


def phase_key(v: np.ndarray, decimals: int = 9) -> bytes:
    """Hashable dedup key, invariant under global phase."""
    c = canonical_phase(v)
    # +0.0 collapses IEEE negative zeros, which would otherwise produce
    # distinct byte patterns for equal values.
    return (np.round(c.view(np.float64), decimals) + 0.0).tobytes()


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = PHASE_EQ_TOL) -> bool:
    ca, cb = canonical_phase(a), canonical_phase(b)
    return bool(np.max(np.abs(ca - cb)) <= tol)


def is_unitary(m: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    d = m.shape[0]
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(d))) <= tol)


def dist_to_scalar(m: np.ndarray) -> float:
    """Frobenius distance from a unitary to the nearest scalar multiple of
    the identity (minimized over the scalar's phase)."""
    d = m.shape[0]
    tr = np.trace(m)
    # ||m - e^{ia}I||_F^2 = 2d - 2|tr| at the optimal phase, for unitary m.
    return float(np.sqrt(max(2 * d - 2 * abs(tr), 0.0)))
