"""A-adjoints, range conditions and operator classes in a semi-inner product space."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import ConsistencyError, NotAdmissible
from .space import SemiInnerSpace

log = logging.getLogger(__name__)

MEMBER_TOL = 1e-10
CLASS_TOL = 1e-9
# a residual this many tolerances away from the cut is no longer "borderline"
_DECISIVE = 1e4


@dataclass(frozen=True)
class Membership:
    """Both range-condition residuals for one operator.

    ``douglas`` measures ``||(I - P) T* A||`` (the range inclusion
    ``R(T*A) ⊆ R(A)``); ``invariance`` measures the top-right block
    ``V_R* T V_N`` in the eigenbasis of ``A`` (``T(N(A)) ⊆ N(A)``).
    """

    douglas: float
    douglas_tol: float
    invariance: float
    invariance_tol: float

    @property
    def in_b_a(self) -> bool:
        return self.douglas <= self.douglas_tol

    @property
    def in_b_a_half(self) -> bool:
        return self.invariance <= self.invariance_tol

    @property
    def borderline(self) -> bool:
        return self.in_b_a != self.in_b_a_half


def membership(space: SemiInnerSpace, T) -> Membership:
    """Evaluate both finite-dimensional membership tests.

    In finite dimension ``B_A = B_{A^{1/2}}``; the two residuals are
    computed along unrelated routes and a clear disagreement raises
    :class:`ConsistencyError`.
    """
    T = linalg.as_cmatrix(T, square=True, name="T")
    space.check_dim(T)
    nT = linalg.norm2(T)
    dres = linalg.norm2(T.conj().T @ space.A - space.projR @ (T.conj().T @ space.A))
    dtol = MEMBER_TOL * max(1.0, space.normA * nT)
    vn = space.null_basis
    if vn.shape[1] == 0:
        ires = 0.0
    else:
        ires = linalg.norm2(space.basis.conj().T @ T @ vn)
    itol = MEMBER_TOL * max(1.0, nT)
    m = Membership(dres, dtol, ires, itol)
    if m.borderline:
        if dres > _DECISIVE * dtol or ires > _DECISIVE * itol:
            raise ConsistencyError(
                f"membership tests disagree: douglas={dres:.3e} (tol {dtol:.1e}), "
                f"invariance={ires:.3e} (tol {itol:.1e})"
            )
        log.warning("borderline membership: douglas=%.3e invariance=%.3e", dres, ires)
    return m


def in_b_a(space: SemiInnerSpace, T) -> bool:
    """Does ``T`` admit an A-adjoint?"""
    return membership(space, T).in_b_a


def in_b_a_half(space: SemiInnerSpace, T) -> bool:
    """Is ``T`` A-bounded (``T(N(A)) ⊆ N(A)``)?"""
    return membership(space, T).in_b_a_half


def _require(space: SemiInnerSpace, T) -> np.ndarray:
    T = linalg.as_cmatrix(T, square=True, name="T")
    if not membership(space, T).in_b_a:
        raise NotAdmissible("operator does not admit an A-adjoint")
    return T


def sharp_unchecked(space: SemiInnerSpace, T: np.ndarray) -> np.ndarray:
    """``A^+ T* A`` without the membership test (caller vouches for it)."""
    return space.pinvA @ (T.conj().T @ space.A)


def sharp(space: SemiInnerSpace, T) -> np.ndarray:
    """The distinguished A-adjoint ``T^#A = A^+ T* A``.

    Raises
    ------
    NotAdmissible
        If ``R(T*A)`` is not contained in ``R(A)``.
    """
    T = _require(space, T)
    return sharp_unchecked(space, T)


def double_sharp(space: SemiInnerSpace, T) -> np.ndarray:
    """``(T^#A)^#A``, which equals ``P T P`` with ``P`` the range projector."""
    s = sharp(space, T)
    return sharp_unchecked(space, s)


def re_a(space: SemiInnerSpace, T) -> np.ndarray:
    T = _require(space, T)
    return 0.5 * (T + sharp_unchecked(space, T))


def im_a(space: SemiInnerSpace, T) -> np.ndarray:
    T = _require(space, T)
    return (T - sharp_unchecked(space, T)) / 2j


@dataclass
class OperatorClassFlags:
    member_BA: bool = False
    member_BA_half: bool = False
    a_selfadjoint: bool = False
    a_positive: bool = False
    a_normal: bool = False
    a_isometry: bool = False
    a_unitary: bool = False
    residuals: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in CLASS_NAMES}
        d["residuals"] = dict(self.residuals)
        return d


CLASS_NAMES = (
    "member_BA",
    "member_BA_half",
    "a_selfadjoint",
    "a_positive",
    "a_normal",
    "a_isometry",
    "a_unitary",
)


def _rel(diff: np.ndarray, *terms: np.ndarray) -> float:
    scale = max([1.0] + [linalg.norm2(t) for t in terms])
    return linalg.norm2(diff) / scale


def classify(space: SemiInnerSpace, T, tol: float = CLASS_TOL) -> OperatorClassFlags:
    """Evaluate every class predicate from its defining residual.

    Residuals are relative to the norms of the compared terms (floored at 1),
    so ``tol`` is scale free.  Predicates that need ``T^#A`` are reported
    false when ``T`` is not admissible.
    """
    T = linalg.as_cmatrix(T, square=True, name="T")
    space.check_dim(T)
    A = space.A
    mem = membership(space, T)
    flags = OperatorClassFlags(member_BA=mem.in_b_a, member_BA_half=mem.in_b_a_half)
    res = flags.residuals
    res["douglas"] = mem.douglas
    res["invariance"] = mem.invariance

    AT = A @ T
    TsA = T.conj().T @ A
    res["a_selfadjoint"] = _rel(AT - TsA, AT, TsA)
    flags.a_selfadjoint = mem.in_b_a and res["a_selfadjoint"] <= tol
    lam_min = float(np.linalg.eigvalsh(linalg.herm(AT))[0])
    res["a_positive"] = max(0.0, -lam_min) / max(1.0, linalg.norm2(AT))
    flags.a_positive = flags.a_selfadjoint and res["a_positive"] <= tol

    TsAT = T.conj().T @ AT
    res["a_isometry"] = _rel(TsAT - A, TsAT, A)
    flags.a_isometry = mem.in_b_a and res["a_isometry"] <= tol

    if not mem.in_b_a:
        return flags
    s = sharp_unchecked(space, T)
    st, ts = s @ T, T @ s
    res["a_normal"] = _rel(st - ts, st, ts)
    flags.a_normal = res["a_normal"] <= tol
    sAs = s.conj().T @ A @ s
    res["a_unitary"] = max(res["a_isometry"], _rel(sAs - A, sAs, A))
    flags.a_unitary = flags.a_isometry and res["a_unitary"] <= tol
    return flags
