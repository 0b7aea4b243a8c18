"""Pure-Python angle sweep (fallback for the compiled ``_sweep`` module).

Both implementations run the same algorithm: evaluate ``f`` on a uniform
periodic grid, keep the best ``max_candidates`` local maxima and refine each
by golden-section search on its two neighbouring grid cells.  The returned
value is always an attained ``f(theta)``, never an extrapolation.
"""

from __future__ import annotations

import math

import numpy as np

HERM_NORM = 0
HERM_MIN = 1
SIGMA_MAX = 2
PENCIL_NORM = 3

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _scalar(mode: int, t: float, X: np.ndarray, Y: np.ndarray) -> float:
    if mode == PENCIL_NORM:
        h = math.cos(t) * X + math.sin(t) * Y
        w = np.linalg.eigvalsh(0.5 * (h + h.conj().T))
        return max(abs(w[0]), abs(w[-1]))
    c = complex(math.cos(t), math.sin(t))
    if mode == SIGMA_MAX:
        return float(np.linalg.svd(c * X + c.conjugate() * Y, compute_uv=False)[0])
    h = c * X
    w = np.linalg.eigvalsh(0.5 * (h + h.conj().T))
    if mode == HERM_MIN:
        return float(w[0])
    return max(abs(w[0]), abs(w[-1]))


def _grid(mode: int, thetas: np.ndarray, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    if mode == PENCIL_NORM:
        h = np.cos(thetas)[:, None, None] * X + np.sin(thetas)[:, None, None] * Y
        w = np.linalg.eigvalsh(0.5 * (h + np.conj(np.swapaxes(h, 1, 2))))
        return np.maximum(np.abs(w[:, 0]), np.abs(w[:, -1]))
    c = (np.cos(thetas) + 1j * np.sin(thetas))[:, None, None]
    if mode == SIGMA_MAX:
        return np.linalg.svd(c * X + np.conj(c) * Y, compute_uv=False)[:, 0]
    h = c * X
    w = np.linalg.eigvalsh(0.5 * (h + np.conj(np.swapaxes(h, 1, 2))))
    if mode == HERM_MIN:
        return w[:, 0]
    return np.maximum(np.abs(w[:, 0]), np.abs(w[:, -1]))


def golden_max(f, a: float, b: float, tol: float):
    """Golden-section maximisation on ``[a, b]``; returns the best ``(value, x)`` seen."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    best_v, best_x = (fc, c) if fc >= fd else (fd, d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
            if fc > best_v:
                best_v, best_x = fc, c
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
            if fd > best_v:
                best_v, best_x = fd, d
    return best_v, best_x


def candidates(g: np.ndarray, max_candidates: int) -> list[int]:
    """Indices of periodic local maxima of ``g``, best first, ties by index."""
    left = np.roll(g, 1)
    right = np.roll(g, -1)
    idx = np.flatnonzero((g >= left) & (g >= right))
    if idx.size == 0:  # pragma: no cover - a finite periodic grid always has one
        idx = np.array([int(np.argmax(g))])
    order = np.lexsort((idx, -g[idx]))
    return [int(i) for i in idx[order][:max_candidates]]


def sweep(mode: int, X, Y, lo: float, hi: float, grid_n: int, refine_tol: float, max_candidates: int = 8):
    """Maximise ``f_mode(theta)`` over the periodic interval ``[lo, hi)``.

    Returns ``(value, theta)``.
    """
    X = np.ascontiguousarray(X, dtype=np.complex128)
    Y = np.ascontiguousarray(Y, dtype=np.complex128)
    h = (hi - lo) / grid_n
    thetas = lo + h * np.arange(grid_n)
    g = _grid(mode, thetas, X, Y)
    k0 = int(np.argmax(g))
    best_v, best_t = float(g[k0]), float(thetas[k0])

    def f(t):
        return _scalar(mode, t, X, Y)

    for k in candidates(g, max_candidates):
        v, t = golden_max(f, thetas[k] - h, thetas[k] + h, refine_tol)
        if v > best_v:
            best_v, best_t = v, t
    return float(best_v), float(best_t)
