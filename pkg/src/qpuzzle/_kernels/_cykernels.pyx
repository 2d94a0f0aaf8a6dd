# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled solver hot loops: batched structured-operator application and
global-phase canonicalization.  Mirrors the numpy backend contract."""

import numpy as np
cimport numpy as cnp
from libc.math cimport rint

cnp.import_array()

NAME = "cython"

cdef double _SUPPORT_TOL = 1e-8


def apply_signed_perm_batch(cnp.ndarray[cnp.complex128_t, ndim=2] states,
                            cnp.ndarray[cnp.int64_t, ndim=1] dest,
                            cnp.ndarray[cnp.complex128_t, ndim=1] phase):
    cdef Py_ssize_t n = states.shape[0], d = states.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.empty((n, d), dtype=np.complex128)
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(d):
            out[i, dest[j]] = phase[j] * states[i, j]
    return out


def apply_root_mixture_batch(cnp.ndarray[cnp.complex128_t, ndim=2] states,
                             cnp.ndarray[cnp.int64_t, ndim=1] dest,
                             cnp.ndarray[cnp.complex128_t, ndim=1] phase,
                             double c, double s):
    cdef Py_ssize_t n = states.shape[0], d = states.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.empty((n, d), dtype=np.complex128)
    cdef Py_ssize_t i, j
    cdef double complex js = 1j * s
    for i in range(n):
        for j in range(d):
            out[i, dest[j]] = phase[j] * states[i, j]
        for j in range(d):
            out[i, j] = c * states[i, j] + js * out[i, j]
    return out


def apply_diagonal_batch(cnp.ndarray[cnp.complex128_t, ndim=2] states,
                         cnp.ndarray[cnp.complex128_t, ndim=1] diag):
    cdef Py_ssize_t n = states.shape[0], d = states.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.empty((n, d), dtype=np.complex128)
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(d):
            out[i, j] = diag[j] * states[i, j]
    return out


def canonicalize_round_batch(cnp.ndarray[cnp.complex128_t, ndim=2] states, int decimals=9):
    cdef Py_ssize_t n = states.shape[0], d = states.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, 2 * d), dtype=np.float64)
    cdef Py_ssize_t i, j, piv
    cdef double complex z, factor
    cdef double mag, scale = 10.0 ** decimals
    for i in range(n):
        piv = -1
        for j in range(d):
            if abs(states[i, j]) > _SUPPORT_TOL:
                piv = j
                break
        if piv < 0:
            factor = 1.0
        else:
            z = states[i, piv]
            mag = abs(z)
            factor = mag / z
        for j in range(d):
            z = states[i, j] * factor
            # +0.0 collapses IEEE negative zeros so equal states hash identically
            out[i, 2 * j] = rint(z.real * scale) / scale + 0.0
            out[i, 2 * j + 1] = rint(z.imag * scale) / scale + 0.0
    return out
