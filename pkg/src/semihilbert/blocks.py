"""2x2 operator matrices over the doubled kernel ``diag(A, A)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import adjoint, kernels, linalg, radius, tilde
from .errors import NotAdmissible, NotInvariant
from .space import SemiInnerSpace, validate_positive

INVARIANCE_TOL = 1e-10


@dataclass(frozen=True)
class BlockSpace:
    base: SemiInnerSpace
    dbl: SemiInnerSpace


def block_space(space: SemiInnerSpace) -> BlockSpace:
    """The doubled space, built once per base space and cached on it."""
    cached = space._cache.get("block_space")
    if cached is None:
        z = np.zeros_like(space.A)
        dbl = validate_positive(np.block([[space.A, z], [z, space.A]]), space.psd_tol, space.rank_tol)
        if dbl.r != 2 * space.r:
            raise RuntimeError("doubled kernel has inconsistent rank")
        cached = BlockSpace(space, dbl)
        space._cache["block_space"] = cached
    return cached


def _admissible(space: SemiInnerSpace, *ops) -> list[np.ndarray]:
    out = []
    for i, T in enumerate(ops):
        T = linalg.as_cmatrix(T, square=True)
        space.check_dim(T)
        if not adjoint.membership(space, T).in_b_a:
            raise NotAdmissible(f"block {i} does not admit an A-adjoint")
        out.append(T)
    return out


def block2(space: SemiInnerSpace, T11, T12, T21, T22) -> np.ndarray:
    """Assemble ``[[T11, T12], [T21, T22]]`` after checking every block is in ``B_A``."""
    t11, t12, t21, t22 = _admissible(space, T11, T12, T21, T22)
    return np.block([[t11, t12], [t21, t22]])


def block_sharp_residual(space: SemiInnerSpace, T11, T12, T21, T22) -> float:
    """Distance between the doubled-kernel adjoint and the blockwise formula.

    The blockwise formula transposes the off-diagonal slots and takes the
    A-adjoint of every block.
    """
    big = block2(space, T11, T12, T21, T22)
    bs = block_space(space)
    lhs = adjoint.sharp(bs.dbl, big)
    s = [adjoint.sharp_unchecked(space, np.asarray(t, dtype=np.complex128)) for t in (T11, T12, T21, T22)]
    rhs = np.block([[s[0], s[2]], [s[1], s[3]]])
    return linalg.norm2(lhs - rhs)


def off_diag_matrix(space: SemiInnerSpace, T, S) -> np.ndarray:
    z = np.zeros((space.n, space.n), dtype=np.complex128)
    return block2(space, z, T, S, z)


def off_diag_radius(
    space: SemiInnerSpace,
    T,
    S,
    grid_n: int = radius.GRID_N,
    refine_tol: float = radius.REFINE_TOL,
) -> float:
    """``(1/2) sup_theta ||e^{i theta} T + e^{-i theta} S^#A||_A``.

    This equals the doubled-kernel numerical radius of ``[[0, T], [S, 0]]``;
    see :func:`off_diag_radius_direct` for that route.
    """
    T, S = _admissible(space, T, S)
    bt = tilde.reduce_unchecked(space, T)
    bss = tilde.reduce_unchecked(space, adjoint.sharp_unchecked(space, S))
    value, _ = kernels.sweep(kernels.SIGMA_MAX, bt, bss, 0.0, math.pi, grid_n, refine_tol)
    return 0.5 * value


def off_diag_radius_direct(space: SemiInnerSpace, T, S, grid_n: int = radius.GRID_N) -> radius.RadiusResult:
    return radius.numerical_radius(block_space(space).dbl, off_diag_matrix(space, T, S), grid_n)


def _normsq_sum(space: SemiInnerSpace, T: np.ndarray, S: np.ndarray) -> float:
    ts = adjoint.sharp_unchecked(space, T)
    ss = adjoint.sharp_unchecked(space, S)
    return radius.op_seminorm(space, T @ ts + ss @ S).value


def psi(space: SemiInnerSpace, T, S, grid_n: int = radius.GRID_N) -> float:
    """Upper bound functional ``(1/2) sqrt(||T T^# + S^# S||_A + 2 omega_A(TS))``."""
    T, S = _admissible(space, T, S)
    w = radius.numerical_radius(space, T @ S, grid_n).value
    return 0.5 * math.sqrt(_normsq_sum(space, T, S) + 2.0 * w)


def phi(space: SemiInnerSpace, T, S, grid_n: int = radius.GRID_N) -> float:
    """Lower bound functional, :func:`psi` with the Crawford number in place of the radius."""
    T, S = _admissible(space, T, S)
    c = radius.crawford(space, T @ S, grid_n).value
    return 0.5 * math.sqrt(_normsq_sum(space, T, S) + 2.0 * c)


def upper_triangular_norm(t: float) -> float:
    """Spectral norm of ``[[1, t], [0, 1]]`` in closed form."""
    return math.sqrt((2.0 + t * t + math.sqrt(t**4 + 4.0 * t * t)) / 2.0)


@dataclass(frozen=True)
class InvolutionMetrics:
    """Direct doubled-kernel values for ``[[I, T], [0, -I]]`` and their closed forms."""

    omega_bb: float
    norm_bb: float
    re_norm: float
    im_norm: float
    closed_omega: float
    closed_norm: float
    closed_re: float
    closed_im: float
    identity_rhs: float
    seminorm_T: float

    def direct(self) -> dict[str, float]:
        return {"omega_bb": self.omega_bb, "norm_bb": self.norm_bb, "re_norm": self.re_norm, "im_norm": self.im_norm}

    def closed(self) -> dict[str, float]:
        return {
            "omega_bb": self.closed_omega,
            "norm_bb": self.closed_norm,
            "re_norm": self.closed_re,
            "im_norm": self.closed_im,
        }

    def max_rel_error(self) -> float:
        d, c = self.direct(), self.closed()
        errs = [abs(d[k] - c[k]) / max(1.0, abs(c[k])) for k in d]
        errs.append(abs(self.omega_bb - self.identity_rhs) / max(1.0, self.omega_bb))
        return max(errs)


def invariance_residual(space: SemiInnerSpace, T) -> float:
    T = np.asarray(T, dtype=np.complex128)
    P = space.projR
    return linalg.norm2(T @ P - P @ T @ P)


def involution_metrics(space: SemiInnerSpace, T, grid_n: int = radius.GRID_N) -> InvolutionMetrics:
    """Evaluate the involution ``[[I, T], [0, -I]]`` directly and by closed forms.

    Raises
    ------
    NotAdmissible
        If ``T`` has no A-adjoint.
    NotInvariant
        If ``N(A)^perp`` is not invariant under ``T``.
    """
    (T,) = _admissible(space, T)
    if invariance_residual(space, T) > INVARIANCE_TOL * max(1.0, linalg.norm2(T)):
        raise NotInvariant("N(A)^perp is not invariant under T")
    n = space.n
    eye = np.eye(n, dtype=np.complex128)
    big = block2(space, eye, T, np.zeros_like(eye), -eye)
    dbl = block_space(space).dbl
    omega_bb = radius.numerical_radius(dbl, big, grid_n).value
    norm_bb = radius.op_seminorm(dbl, big).value
    re_norm = radius.op_seminorm(dbl, adjoint.re_a(dbl, big)).value
    im_norm = radius.op_seminorm(dbl, adjoint.im_a(dbl, big)).value
    t = radius.op_seminorm(space, T).value
    c_omega = 0.5 * math.sqrt(t * t + 4.0)
    c_norm = c_omega + 0.5 * t
    return InvolutionMetrics(
        omega_bb=omega_bb,
        norm_bb=norm_bb,
        re_norm=re_norm,
        im_norm=im_norm,
        closed_omega=c_omega,
        closed_norm=c_norm,
        closed_re=c_omega,
        closed_im=0.5 * (c_norm - 1.0 / c_norm),
        identity_rhs=0.5 * (norm_bb + 1.0 / norm_bb),
        seminorm_T=t,
    )
