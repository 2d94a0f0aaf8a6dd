"""Pure-numpy implementations of the solver hot loops.  Same contract as
the compiled kernels; selected at import when the extension is missing."""

from __future__ import annotations

import numpy as np

NAME = "numpy"

_SUPPORT_TOL = 1e-8


def apply_signed_perm_batch(states: np.ndarray, dest: np.ndarray, phase: np.ndarray) -> np.ndarray:
    out = np.empty_like(states)
    out[:, dest] = states * phase
    return out


def apply_root_mixture_batch(
    states: np.ndarray, dest: np.ndarray, phase: np.ndarray, c: float, s: float
) -> np.ndarray:
    out = np.empty_like(states)
    out[:, dest] = states * phase
    return c * states + 1j * s * out


def apply_diagonal_batch(states: np.ndarray, diag: np.ndarray) -> np.ndarray:
    return states * diag


def canonicalize_round_batch(states: np.ndarray, decimals: int = 9) -> np.ndarray:
    """Align each row's first significant amplitude to be real-positive,
    then round onto a grid.  Returns a float64 view array of shape
    (n, 2d) suitable for hashing row bytes."""
    n, d = states.shape
    mask = np.abs(states) > _SUPPORT_TOL
    idx = np.argmax(mask, axis=1)
    pivot = states[np.arange(n), idx]
    mag = np.abs(pivot)
    safe = mag > 0
    factor = np.ones(n, dtype=np.complex128)
    factor[safe] = mag[safe] / pivot[safe]
    out = states * factor[:, None]
    # +0.0 collapses IEEE negative zeros so equal states hash identically.
    return np.round(out.view(np.float64).reshape(n, 2 * d), decimals) + 0.0
