"""Semi-inner product spaces induced by a positive semidefinite kernel."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .errors import DimensionMismatch, NotHermitian, NotPositive, ZeroKernel

PSD_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SemiInnerSpace:
    """A validated positive kernel ``A`` together with its spectral data.

    Instances are created by :func:`validate_positive` and never mutated.
    ``basis`` holds the eigenvectors of ``A`` whose eigenvalues exceed
    ``rank_tol * lambda_max`` and ``d`` the matching eigenvalues; the
    complementary eigenvectors span the numerical null space.
    """

    A: np.ndarray
    eig: linalg.HermEig
    pos_idx: np.ndarray
    psd_tol: float
    rank_tol: float
    clamped: int = 0
    clamp_magnitude: float = 0.0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def r(self) -> int:
        return int(self.pos_idx.size)

    @property
    def basis(self) -> np.ndarray:
        return self.eig.vectors[:, self.pos_idx]

    @property
    def d(self) -> np.ndarray:
        return self.eig.values[self.pos_idx]

    @cached_property
    def null_basis(self) -> np.ndarray:
        mask = np.ones(self.n, dtype=bool)
        mask[self.pos_idx] = False
        return self.eig.vectors[:, mask]

    @cached_property
    def lambda_max(self) -> float:
        return float(self.eig.values[-1])

    @cached_property
    def sqrtA(self) -> np.ndarray:
        v = self.basis
        return linalg.herm((v * np.sqrt(self.d)) @ v.conj().T)

    @cached_property
    def pinv_sqrtA(self) -> np.ndarray:
        v = self.basis
        return linalg.herm((v / np.sqrt(self.d)) @ v.conj().T)

    @cached_property
    def pinvA(self) -> np.ndarray:
        v = self.basis
        return linalg.herm((v / self.d) @ v.conj().T)

    @cached_property
    def projR(self) -> np.ndarray:
        v = self.basis
        return linalg.herm(v @ v.conj().T)

    @cached_property
    def normA(self) -> float:
        return self.lambda_max

    def check_dim(self, *arrays) -> None:
        for a in arrays:
            if a.shape[0] != self.n or (a.ndim == 2 and a.shape[1] != self.n):
                raise DimensionMismatch(
                    f"expected dimension {self.n}, got shape {a.shape}"
                )

    def coords(self, x) -> np.ndarray:
        """Coordinates of ``A^{1/2} x`` in the eigenbasis of ``R(A)``."""
        x = np.asarray(x, dtype=np.complex128)
        return np.sqrt(self.d)[:, None] * (self.basis.conj().T @ x.reshape(self.n, -1))

    def lift(self, u) -> np.ndarray:
        """Inverse of :meth:`coords` on ``R(A)``: an A-isometric embedding."""
        u = np.asarray(u, dtype=np.complex128)
        return self.basis @ (u.reshape(self.r, -1) / np.sqrt(self.d)[:, None])


def validate_positive(A, psd_tol: float = PSD_TOL, rank_tol: float = linalg.RANK_TOL) -> SemiInnerSpace:
    """Validate ``A`` as a positive kernel and cache its spectral data.

    ``psd_tol`` is relative: eigenvalues down to ``-psd_tol * max(1, lambda_max)``
    are accepted and clamped to zero, anything more negative raises
    :class:`NotPositive`.
    """
    a = linalg.as_cmatrix(A, square=True, name="A")
    scale = max(1.0, float(np.max(np.abs(a))))
    if float(np.max(np.abs(a - a.conj().T))) > psd_tol * scale:
        raise NotHermitian("kernel A is not Hermitian")
    w, v = np.linalg.eigh(linalg.herm(a))
    lam_max = float(w[-1])
    if lam_max <= 0.0:
        raise ZeroKernel("kernel A is numerically zero")
    floor = -psd_tol * max(1.0, lam_max)
    if w[0] < floor:
        raise NotPositive(f"kernel A has eigenvalue {w[0]:.3e} < {floor:.3e}")
    neg = w < 0.0
    clamp_mag = float(-w[neg].min()) if neg.any() else 0.0
    w = np.where(neg, 0.0, w)
    pos_idx = np.flatnonzero(w > rank_tol * lam_max)
    # rebuild A from the clamped spectrum so every cached quantity agrees
    a_clean = linalg.herm((v * w) @ v.conj().T) if neg.any() else linalg.herm(a)
    return SemiInnerSpace(
        A=a_clean,
        eig=linalg.HermEig(w, v),
        pos_idx=pos_idx,
        psd_tol=psd_tol,
        rank_tol=rank_tol,
        clamped=int(neg.sum()),
        clamp_magnitude=clamp_mag,
    )


def sip(space: SemiInnerSpace, x, y) -> complex:
    """Semi-inner product ``<x|y>_A = <Ax, y> = y* A x``."""
    x = linalg.as_vector(x, "x")
    y = linalg.as_vector(y, "y")
    if x.size != space.n or y.size != space.n:
        raise DimensionMismatch(f"vectors must have length {space.n}")
    return complex(np.vdot(y, space.A @ x))


def seminorm_vec(space: SemiInnerSpace, x) -> float:
    """``||x||_A``."""
    return float(np.sqrt(max(0.0, sip(space, x, x).real)))


def sample_a_unit(space: SemiInnerSpace, seed, count: int, include_null: bool = False) -> np.ndarray:
    """Draw ``count`` vectors with ``||x||_A = 1``.

    Returns an array of shape ``(count, n)``.  The range component is a
    normalised complex Gaussian in ``R(A)``; with ``include_null`` an
    independent Gaussian component in ``N(A)`` is added, which must leave
    every A-quantity unchanged.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    rng = np.random.default_rng(seed)
    if count == 0:
        return np.zeros((0, space.n), dtype=np.complex128)
    u = rng.standard_normal((space.r, count)) + 1j * rng.standard_normal((space.r, count))
    u /= np.linalg.norm(u, axis=0)
    x = space.lift(u)
    k = space.n - space.r
    if include_null and k > 0:
        z = rng.standard_normal((k, count)) + 1j * rng.standard_normal((k, count))
        x = x + space.null_basis @ z
    return x.T.copy()
