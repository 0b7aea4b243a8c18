"""Reduction of A-bounded operators to ordinary matrices on ``R(A^{1/2})``.

In finite dimension ``R(A^{1/2}) = R(A)``.  Writing ``A = V diag(d) V*`` on
its range, the map ``x -> diag(sqrt(d)) V* x`` is an isometry from
``(H, ||.||_A)`` modulo ``N(A)`` onto ``C^r``, and an A-bounded ``T`` acts in
these coordinates through ``B = diag(sqrt(d)) V* T V diag(1/sqrt(d))``.
All seminorms and radii of ``T`` become the classical ones of ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import adjoint, linalg
from .errors import Unbounded
from .space import SemiInnerSpace


@dataclass(frozen=True)
class TildeOperator:
    B: np.ndarray
    basis: np.ndarray
    d: np.ndarray

    @property
    def r(self) -> int:
        return self.B.shape[0]


def reduce_unchecked(space: SemiInnerSpace, T: np.ndarray) -> np.ndarray:
    sq = np.sqrt(space.d)
    v = space.basis
    return (sq[:, None] * (v.conj().T @ T @ v)) / sq[None, :]


def reduce(space: SemiInnerSpace, T) -> TildeOperator:
    """Matrix of the induced operator on ``R(A^{1/2})``.

    Raises
    ------
    Unbounded
        If ``T(N(A))`` is not contained in ``N(A)`` (``||T||_A`` is infinite).
    """
    T = linalg.as_cmatrix(T, square=True, name="T")
    space.check_dim(T)
    if not adjoint.membership(space, T).in_b_a_half:
        raise Unbounded("T(N(A)) is not contained in N(A)")
    return TildeOperator(reduce_unchecked(space, T), space.basis, space.d)


def intertwining_residual(space: SemiInnerSpace, T, x) -> float:
    """``||coords(A T x) - B coords(A x)||`` for a batch of columns ``x``.

    Here ``coords`` maps ``A y`` to its coordinates in the orthonormal
    eigenbasis of ``R(A^{1/2})``, i.e. ``diag(1/sqrt(d)) V* A y``.
    """
    T = linalg.as_cmatrix(T, square=True)
    x = np.asarray(x, dtype=np.complex128).reshape(space.n, -1)
    B = reduce(space, T).B
    v, sq = space.basis, np.sqrt(space.d)
    lhs = (v.conj().T @ (space.A @ T @ x)) / sq[:, None]
    rhs = B @ ((v.conj().T @ (space.A @ x)) / sq[:, None])
    return float(np.max(np.linalg.norm(lhs - rhs, axis=0)))


def tilde_sharp_is_adjoint(space: SemiInnerSpace, T) -> float:
    """``||reduce(T^#A) - reduce(T)*||``; zero in exact arithmetic."""
    s = adjoint.sharp(space, T)
    return linalg.norm2(reduce(space, s).B - reduce(space, T).B.conj().T)


def tilde_homomorphism(space: SemiInnerSpace, X, Y) -> tuple[float, float]:
    """Residuals of multiplicativity and additivity of the reduction."""
    X = linalg.as_cmatrix(X, square=True)
    Y = linalg.as_cmatrix(Y, square=True)
    bx, by = reduce(space, X).B, reduce(space, Y).B
    res_mul = linalg.norm2(reduce(space, X @ Y).B - bx @ by)
    res_add = linalg.norm2(reduce(space, X + Y).B - (bx + by))
    return res_mul, res_add
