"""A-operator seminorm, A-numerical radius, A-Crawford number and A-numerical range.

Every quantity is computed on the reduced matrix ``B = reduce(space, T).B``
where ``omega_A(T) = omega(B)``, ``||T||_A = ||B||`` and ``W_A(T) = W(B)``.
Radii come from the support function of the numerical range::

    omega(B) = max_theta || Herm(e^{i theta} B) ||          theta in [0, pi)
    c(B)     = max(0, max_theta lambda_min(Herm(e^{i theta} B)))   theta in [0, 2 pi)

maximised by a uniform angle grid followed by golden-section refinement
(see :mod:`semihilbert.kernels`).  :func:`sampling_oracle` gives
independent one-sided bounds from random A-unit vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import adjoint, kernels, linalg, tilde
from .errors import ConsistencyError, Unbounded
from .space import SemiInnerSpace, sample_a_unit

GRID_N = 720
REFINE_TOL = 1e-10
CROSS_TOL = 1e-9
_COLLAPSE = 1e-3


@dataclass(frozen=True)
class RadiusResult:
    """A computed radius or seminorm.

    ``error_bound`` is an a-priori bound on ``|value - exact|``: the
    Lipschitz constant ``||B||`` of the angle function times the final
    angular resolution.
    """

    value: float
    method: str
    theta_star: float | None = None
    error_bound: float = 0.0

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class RangeBoundary:
    support_points: np.ndarray
    angles: np.ndarray
    witnesses: np.ndarray = field(repr=False)
    error_bound: float = 0.0


def _reduced(space: SemiInnerSpace, T) -> np.ndarray:
    T = linalg.as_cmatrix(T, square=True, name="T")
    space.check_dim(T)
    if not adjoint.membership(space, T).in_b_a_half:
        raise Unbounded("T(N(A)) is not contained in N(A): ||T||_A is infinite")
    return tilde.reduce_unchecked(space, T)


def op_seminorm(space: SemiInnerSpace, T) -> RadiusResult:
    """``||T||_A`` as the spectral norm of the reduced matrix.

    Cross-checked against ``||A^{1/2} T (A^{1/2})^+||``, which reaches the
    same number without the eigen-coordinates.
    """
    B = _reduced(space, T)
    value = linalg.norm2(B)
    T = np.asarray(T, dtype=np.complex128)
    other = linalg.norm2(space.sqrtA @ T @ space.pinv_sqrtA)
    if abs(value - other) > CROSS_TOL * max(1.0, value):
        raise ConsistencyError(f"seminorm paths disagree: {value!r} vs {other!r}")
    return RadiusResult(value, "tilde-spectral", None, 4.0 * linalg.EPS * B.shape[0] * max(1.0, value))


def omega_of(B: np.ndarray, grid_n: int = GRID_N, refine_tol: float = REFINE_TOL) -> RadiusResult:
    """Classical numerical radius of a square matrix."""
    value, theta = kernels.sweep(kernels.HERM_NORM, B, B, 0.0, math.pi, grid_n, refine_tol)
    nb = linalg.norm2(B)
    return RadiusResult(value, "theta-sup", theta, nb * refine_tol)


def numerical_radius(space: SemiInnerSpace, T, grid_n: int = GRID_N, refine_tol: float = REFINE_TOL) -> RadiusResult:
    """``omega_A(T)``.

    Raises
    ------
    Unbounded
        If ``T`` is not A-bounded (the A-numerical range is then all of C).
    """
    B = _reduced(space, T)
    res = omega_of(B, grid_n, refine_tol)
    nb = linalg.norm2(B)
    slack = res.error_bound + 1e-12 * max(1.0, nb)
    if not (0.5 * nb - slack <= res.value <= nb + slack):
        raise ConsistencyError(f"omega={res.value!r} outside [||T||/2, ||T||] for ||T||={nb!r}")
    return res


def sup_alpha_beta(space: SemiInnerSpace, T, grid_n: int = GRID_N, refine_tol: float = REFINE_TOL) -> float:
    """``sup ||a Re_A(T) + b Im_A(T)||_A`` over ``a^2 + b^2 = 1``.

    Works in the ambient space: the A-selfadjoint parts are conjugated to
    Hermitian matrices by ``A^{1/2} (.) (A^{1/2})^+``, so neither the
    reduction nor the angle function of :func:`numerical_radius` is reused.
    """
    re = adjoint.re_a(space, T)
    im = adjoint.im_a(space, T)
    hr = space.sqrtA @ re @ space.pinv_sqrtA
    hi = space.sqrtA @ im @ space.pinv_sqrtA
    value, _ = kernels.sweep(kernels.PENCIL_NORM, hr, hi, 0.0, math.pi, grid_n, refine_tol)
    return value


def crawford(space: SemiInnerSpace, T, grid_n: int = GRID_N, refine_tol: float = REFINE_TOL) -> RadiusResult:
    """A-Crawford number ``c_A(T)``: the distance from 0 to ``W_A(T)``."""
    B = _reduced(space, T)
    value, theta = kernels.sweep(kernels.HERM_MIN, B, B, 0.0, 2.0 * math.pi, grid_n, refine_tol)
    eb = linalg.norm2(B) * refine_tol
    if value <= 0.0:
        return RadiusResult(0.0, "theta-sup", None, eb)
    return RadiusResult(value, "theta-sup", theta, eb)


def numerical_range_boundary(space: SemiInnerSpace, T, count: int = 360) -> RangeBoundary:
    """Extreme points of ``W_A(T)`` in ``count`` equally spaced directions.

    Each point is ``<T x | x>_A`` for an explicit A-unit witness ``x``
    (rows of ``witnesses``).  ``error_bound`` bounds how far the largest
    point modulus can fall short of ``omega_A(T)``.
    """
    if count < 8:
        raise ValueError("count must be at least 8")
    B = _reduced(space, T)
    angles = 2.0 * math.pi * np.arange(count) / count
    c = np.exp(-1j * angles)[:, None, None]
    h = c * B
    _, vecs = np.linalg.eigh(0.5 * (h + np.conj(np.swapaxes(h, 1, 2))))
    u = vecs[:, :, -1]
    points = np.einsum("ki,ij,kj->k", u.conj(), B, u)
    witnesses = space.lift(u.T).T
    omega_upper = linalg.norm2(B)
    return RangeBoundary(points, angles, witnesses, omega_upper * (1.0 - math.cos(math.pi / count)))


@dataclass(frozen=True)
class OracleBounds:
    omega_lb: float
    seminorm_lb: float
    crawford_ub: float

    def __iter__(self):
        return iter((self.omega_lb, self.seminorm_lb, self.crawford_ub))


def _colwise_dot(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return (X.conj() * Y).sum(axis=0)


def sampling_oracle(
    space: SemiInnerSpace,
    T,
    seed=0,
    samples: int = 20000,
    ascent_iters: int = 30,
) -> OracleBounds:
    """One-sided bounds from random A-unit vectors improved by local ascent.

    Returns ``omega_lb <= omega_A(T)``, ``seminorm_lb <= ||T||_A`` and
    ``crawford_ub >= c_A(T)``.  Every reported number is attained by an
    explicit A-unit vector, so the bounds hold regardless of convergence.
    The ascent for the radius is a power step with ``I + eta Re_A(p T)``
    where ``p`` is the current phase of ``<T x|x>_A``; it never decreases
    ``|<T x|x>_A|``.  Nothing here uses the reduced matrix or the angle sweep.
    """
    T = linalg.as_cmatrix(T, square=True, name="T")
    space.check_dim(T)
    if not adjoint.membership(space, T).in_b_a_half:
        raise Unbounded("T(N(A)) is not contained in N(A)")
    A = space.A
    n = space.n
    AT = A @ T
    Ts = adjoint.sharp_unchecked(space, T)
    # iterates stay in R(A): P T and T^#A both map into R(A)
    stack = np.vstack([A, AT, space.projR @ T, Ts])
    TsT = Ts @ T
    # step size: eta = 1/(2||T||_A) keeps I +- eta*Re_A(pT) >= I/2 in the
    # A-order, so an iterate can never collapse into N(A)
    scale = linalg.norm2(space.sqrtA @ T @ space.pinv_sqrtA)
    eta = 0.5 / scale if scale > 0 else 1.0

    X0 = sample_a_unit(space, seed, samples).T

    def split(X):
        Y = stack @ X
        ax, atx = Y[:n], Y[n : 2 * n]
        nrm = np.sqrt(np.maximum(_colwise_dot(X, ax).real, 0.0))
        nrm[nrm < _COLLAPSE] = np.nan  # dropped: not a usable A-unit vector
        return nrm, _colwise_dot(X, atx), Y[2 * n : 3 * n], Y[3 * n :]

    def phase(z):
        az = np.abs(z)
        p = np.ones_like(z)
        nz = az > 0
        p[nz] = np.conj(z[nz]) / az[nz]
        return p

    def run(sign):
        X = X0
        nrm, z, ptx, tsx = split(X)
        z = z / nrm**2
        best = [np.abs(z)]
        for _ in range(ascent_iters):
            p = phase(np.nan_to_num(z))
            X = np.nan_to_num((X + sign * 0.5 * eta * (p * ptx + np.conj(p) * tsx)) / nrm)
            nrm, z, ptx, tsx = split(X)
            z = z / nrm**2
            best.append(np.abs(z))
        return np.array(best)

    omega_lb = float(np.nanmax(run(+1.0)))
    crawford_ub = float(np.nanmin(run(-1.0)))

    X = X0
    sn = np.sqrt(np.maximum(_colwise_dot(T @ X, AT @ X).real, 0.0))
    seminorm_lb = float(np.max(sn))
    for _ in range(ascent_iters):
        X = TsT @ X
        nrm = np.sqrt(np.maximum(_colwise_dot(X, A @ X).real, 0.0))
        nrm[nrm == 0.0] = 1.0
        X = X / nrm
        sn = np.sqrt(np.maximum(_colwise_dot(T @ X, AT @ X).real, 0.0))
        seminorm_lb = max(seminorm_lb, float(np.max(sn)))

    return OracleBounds(omega_lb, seminorm_lb, crawford_ub)
