# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled angle sweep.  Same algorithm and API as ``_sweep_py``."""

import numpy as np

from libc.math cimport cos, sin, sqrt, fabs
from libc.stdlib cimport malloc, free
from scipy.linalg.cython_lapack cimport zheev, zgesvd

cdef enum:
    HERM_NORM = 0
    HERM_MIN = 1
    SIGMA_MAX = 2
    PENCIL_NORM = 3

cdef double INV_PHI = (sqrt(5.0) - 1.0) / 2.0


cdef struct Work:
    int m
    int lwork
    int info
    double complex *a
    double complex *work
    double *w
    double *rwork


cdef int _alloc(Work *wk, int m):
    wk.m = m
    wk.lwork = 64 * m if m > 1 else 8
    wk.info = 0
    wk.a = <double complex *> malloc(m * m * sizeof(double complex))
    wk.work = <double complex *> malloc(wk.lwork * sizeof(double complex))
    wk.w = <double *> malloc(m * sizeof(double))
    wk.rwork = <double *> malloc((5 * m + 2) * sizeof(double))
    if wk.a == NULL or wk.work == NULL or wk.w == NULL or wk.rwork == NULL:
        return -1
    return 0


cdef void _free(Work *wk):
    free(wk.a)
    free(wk.work)
    free(wk.w)
    free(wk.rwork)


cdef double _eval(int mode, double t, const double complex[:, ::1] X,
                  const double complex[:, ::1] Y, Work *wk) noexcept nogil:
    cdef int m = wk.m
    cdef int i, j
    cdef double ct = cos(t)
    cdef double st = sin(t)
    cdef double complex c = ct + 1j * st
    cdef double complex cc = ct - 1j * st
    cdef double complex v
    cdef char jobz = b'N'
    cdef char uplo = b'L'
    cdef double complex dummy = 0
    cdef int one = 1
    cdef double a0, a1

    if mode == SIGMA_MAX:
        for j in range(m):
            for i in range(m):
                wk.a[i + j * m] = c * X[i, j] + cc * Y[i, j]
        zgesvd(&jobz, &jobz, &m, &m, wk.a, &m, wk.w, &dummy, &one, &dummy, &one,
               wk.work, &wk.lwork, wk.rwork, &wk.info)
        return wk.w[0]

    for j in range(m):
        for i in range(j, m):
            if mode == PENCIL_NORM:
                v = 0.5 * (ct * (X[i, j] + X[j, i].conjugate())
                           + st * (Y[i, j] + Y[j, i].conjugate()))
            else:
                v = 0.5 * (c * X[i, j] + (c * X[j, i]).conjugate())
            wk.a[i + j * m] = v
    zheev(&jobz, &uplo, &m, wk.a, &m, wk.w, wk.work, &wk.lwork, wk.rwork, &wk.info)
    if mode == HERM_MIN:
        return wk.w[0]
    a0 = fabs(wk.w[0])
    a1 = fabs(wk.w[m - 1])
    return a0 if a0 > a1 else a1


cdef void _golden(int mode, double a, double b, double tol,
                  const double complex[:, ::1] X, const double complex[:, ::1] Y,
                  Work *wk, double *best_v, double *best_x) noexcept nogil:
    cdef double c = b - INV_PHI * (b - a)
    cdef double d = a + INV_PHI * (b - a)
    cdef double fc = _eval(mode, c, X, Y, wk)
    cdef double fd = _eval(mode, d, X, Y, wk)
    if fc >= fd:
        best_v[0] = fc
        best_x[0] = c
    else:
        best_v[0] = fd
        best_x[0] = d
    while b - a > tol:
        if fc >= fd:
            b = d
            d = c
            fd = fc
            c = b - INV_PHI * (b - a)
            fc = _eval(mode, c, X, Y, wk)
            if fc > best_v[0]:
                best_v[0] = fc
                best_x[0] = c
        else:
            a = c
            c = d
            fc = fd
            d = a + INV_PHI * (b - a)
            fd = _eval(mode, d, X, Y, wk)
            if fd > best_v[0]:
                best_v[0] = fd
                best_x[0] = d


def grid_values(int mode, X, Y, double lo, double hi, int grid_n):
    """Evaluate ``f_mode`` on the uniform grid (exposed for tests and benchmarks)."""
    cdef const double complex[:, ::1] xv = np.ascontiguousarray(X, dtype=np.complex128)
    cdef const double complex[:, ::1] yv = np.ascontiguousarray(Y, dtype=np.complex128)
    cdef double h = (hi - lo) / grid_n
    out = np.empty(grid_n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Work wk
    cdef int k
    if _alloc(&wk, xv.shape[0]) != 0:
        _free(&wk)
        raise MemoryError()
    with nogil:
        for k in range(grid_n):
            ov[k] = _eval(mode, lo + h * k, xv, yv, &wk)
    info = wk.info
    _free(&wk)
    if info != 0:
        raise ArithmeticError(f"LAPACK failure (info={info})")
    return out


def sweep(int mode, X, Y, double lo, double hi, int grid_n, double refine_tol,
          int max_candidates=8):
    """Maximise ``f_mode(theta)`` over the periodic interval ``[lo, hi)``.

    Returns ``(value, theta)``.
    """
    from ._sweep_py import candidates

    cdef const double complex[:, ::1] xv = np.ascontiguousarray(X, dtype=np.complex128)
    cdef const double complex[:, ::1] yv = np.ascontiguousarray(Y, dtype=np.complex128)
    cdef double h = (hi - lo) / grid_n
    cdef Work wk
    cdef double v, t, best_v, best_t, center
    cdef int k, k0
    g = grid_values(mode, X, Y, lo, hi, grid_n)
    k0 = int(np.argmax(g))
    best_v = g[k0]
    best_t = lo + h * k0
    cand = candidates(g, max_candidates)
    if _alloc(&wk, xv.shape[0]) != 0:
        _free(&wk)
        raise MemoryError()
    for k in cand:
        center = lo + h * k
        with nogil:
            _golden(mode, center - h, center + h, refine_tol, xv, yv, &wk, &v, &t)
        if v > best_v:
            best_v = v
            best_t = t
    info = wk.info
    _free(&wk)
    if info != 0:
        raise ArithmeticError(f"LAPACK failure (info={info})")
    return float(best_v), float(best_t)
