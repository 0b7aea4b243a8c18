"""Dense complex matrix primitives.

Everything here works on plain ``numpy`` arrays of dtype ``complex128``.
Decompositions are delegated to LAPACK through numpy/scipy; the functions
in this module only add validation, consistent rank cut-offs and the small
amount of glue the rest of the package relies on.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import NoConvergence, NonFinite, NotHermitian, NotSquare

EPS = np.finfo(np.float64).eps
RANK_TOL = 1e-12
HERM_TOL = 1e-10

__all__ = [
    "EPS",
    "RANK_TOL",
    "HermEig",
    "as_cmatrix",
    "as_vector",
    "herm",
    "norm2",
    "herm_eig",
    "svd",
    "pinv",
    "spectral_radius",
    "abs_value",
    "range_projector",
    "numerical_rank",
]


class HermEig(NamedTuple):
    """Eigen-decomposition of a Hermitian matrix, eigenvalues ascending."""

    values: np.ndarray
    vectors: np.ndarray


def as_cmatrix(m, *, square: bool = False, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a finite 2-D ``complex128`` array.

    Raises
    ------
    NonFinite
        If any entry is NaN or infinite.
    NotSquare
        If ``square`` is set and the matrix is not square.
    """
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite(f"{name} has non-finite entries")
    if square and a.shape[0] != a.shape[1]:
        raise NotSquare(f"{name} must be square, got shape {a.shape}")
    return a


def as_vector(x, name: str = "vector") -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise NonFinite(f"{name} has non-finite entries")
    return v


def herm(m: np.ndarray) -> np.ndarray:
    """Hermitian part ``(M + M*)/2``."""
    return 0.5 * (m + m.conj().T)


def norm2(m: np.ndarray) -> float:
    """Spectral norm (largest singular value); 0 for empty input."""
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def herm_eig(m) -> HermEig:
    """Eigen-decomposition of a Hermitian matrix.

    The Hermitian check is relative: ``max|M - M*| <= 1e-10 * max(1, max|M|)``.
    The matrix is symmetrised before the LAPACK call, so the returned
    eigenvalues are exactly real and sorted ascending.
    """
    a = as_cmatrix(m, square=True)
    scale = max(1.0, float(np.max(np.abs(a))))
    if float(np.max(np.abs(a - a.conj().T))) > HERM_TOL * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    try:
        w, v = np.linalg.eigh(herm(a))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    return HermEig(w, v)


def svd(m):
    """Thin SVD ``M = U diag(sigma) V*`` with ``sigma`` descending.

    Returns ``(U, sigma, V)``; note ``V`` (not ``V*``) is returned.
    """
    a = as_cmatrix(m)
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NoConvergence(str(exc)) from exc
    return u, s, vh.conj().T


def numerical_rank(sigma: np.ndarray, rank_tol: float = RANK_TOL) -> int:
    """Number of singular values above ``rank_tol * sigma_max``."""
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > rank_tol * sigma[0]))


def _check_rank_tol(rank_tol: float) -> None:
    if not 0.0 < rank_tol < 1.0:
        raise ValueError("rank_tol must lie in (0, 1)")


def pinv(m, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse with a relative singular-value cut-off.

    Singular values ``<= rank_tol * sigma_max`` are treated as exact zeros.
    """
    _check_rank_tol(rank_tol)
    u, s, v = svd(m)
    k = numerical_rank(s, rank_tol)
    if k == 0:
        return np.zeros((v.shape[0], u.shape[0]), dtype=np.complex128)
    return (v[:, :k] / s[:k]) @ u[:, :k].conj().T


def spectral_radius(m) -> float:
    """Largest eigenvalue modulus of a general square matrix (QR/Schur solve)."""
    a = as_cmatrix(m, square=True)
    try:
        w = scipy.linalg.eigvals(a, check_finite=False)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise NoConvergence(str(exc)) from exc
    return float(np.max(np.abs(w)))


def abs_value(m) -> np.ndarray:
    """Operator absolute value ``|M| = (M* M)^{1/2}``."""
    a = as_cmatrix(m, square=True)
    w, v = herm_eig(a.conj().T @ a)
    w = np.sqrt(np.clip(w, 0.0, None))
    return herm((v * w) @ v.conj().T)


def range_projector(m, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthogonal projector onto the column space of ``m``."""
    _check_rank_tol(rank_tol)
    u, s, _ = svd(m)
    k = numerical_rank(s, rank_tol)
    uk = u[:, :k]
    return herm(uk @ uk.conj().T)
