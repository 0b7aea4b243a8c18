"""Registry of executable inequality and equality checks.

A check receives an :class:`Evaluator` bound to one generated instance and
returns a list of :class:`Link` objects, each one comparison ``lhs <= rhs``
(or ``lhs == rhs`` for equalities).  :func:`run_check` applies the slack
policy and reports the tightest link.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import adjoint, blocks, linalg, radius, tilde
from ..space import SemiInnerSpace, sample_a_unit
from .generators import InstanceSpec, generate

EPS_ABS = 1e-9
EPS_REL = 1e-7
STRUCT_TOL = 1e-9
TRANSFER_TOL = 1e-8
ORACLE_SAMPLES = 2000
ORACLE_ITERS = 20


@dataclass(frozen=True)
class Link:
    label: str
    lhs: float
    rhs: float
    eq: bool = False
    tol: float | None = None  # fixed tolerance replacing the slack policy

    def slack(self, error: float) -> float:
        if self.tol is not None:
            return self.tol
        scale = max(1.0, abs(self.rhs))
        return EPS_ABS + EPS_REL * scale + 2.0 * error * scale

    def margin(self) -> float:
        if self.eq:
            return -abs(self.lhs - self.rhs)
        return self.rhs - self.lhs


@dataclass(frozen=True)
class CheckResult:
    name: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    slack: float
    instance: InstanceSpec | None
    link: str = ""
    witnesses: np.ndarray | None = field(default=None, repr=False, compare=False)
    info: dict = field(default_factory=dict, compare=False)


class Evaluator:
    """Cached radius/seminorm evaluation that tracks the error bounds used."""

    def __init__(self, space: SemiInnerSpace, seed: int = 0, grid_n: int = radius.GRID_N):
        self.space = space
        self.seed = seed
        self.grid_n = grid_n
        self.error = 0.0
        self.info: dict = {}
        self._cache: dict = {}

    def _get(self, kind: str, X: np.ndarray, fn):
        key = (kind, X.tobytes())
        hit = self._cache.get(key)
        if hit is None:
            hit = fn()
            self._cache[key] = hit
        self.error += hit.error_bound
        return hit.value

    def norm(self, X) -> float:
        return self._get("norm", X, lambda: radius.op_seminorm(self.space, X))

    def omega(self, X) -> float:
        return self._get("omega", X, lambda: radius.numerical_radius(self.space, X, self.grid_n))

    def craw(self, X) -> float:
        return self._get("craw", X, lambda: radius.crawford(self.space, X, self.grid_n))

    def sharp(self, X) -> np.ndarray:
        return adjoint.sharp_unchecked(self.space, X)

    def jordan(self, X) -> float:
        """``||T T^# + T^# T||_A``."""
        s = self.sharp(X)
        return self.norm(X @ s + s @ X)

    def odr(self, T, S) -> float:
        self.error += (self.norm(T) + self.norm(S)) * radius.REFINE_TOL
        return blocks.off_diag_radius(self.space, T, S, self.grid_n)

    def psi(self, T, S) -> float:
        return 0.5 * math.sqrt(self.norm(T @ self.sharp(T) + self.sharp(S) @ S) + 2.0 * self.omega(T @ S))

    def phi(self, T, S) -> float:
        return 0.5 * math.sqrt(self.norm(T @ self.sharp(T) + self.sharp(S) @ S) + 2.0 * self.craw(T @ S))


CheckFn = Callable[[Evaluator, list], list]


@dataclass(frozen=True)
class CheckSpec:
    name: str
    fn: CheckFn
    classes: tuple[tuple[str, ...], ...]
    description: str

    def classes_for(self, trial: int) -> tuple[str, ...]:
        return self.classes[trial % len(self.classes)]


REGISTRY: dict[str, CheckSpec] = {}


def check(name: str, *classes: tuple[str, ...], doc: str = ""):
    def wrap(fn: CheckFn) -> CheckFn:
        REGISTRY[name] = CheckSpec(name, fn, tuple(classes) or (("generic",),), doc)
        return fn

    return wrap


G1 = ("generic",)
G2 = ("generic", "generic")
G4 = ("generic",) * 4


def _scale(*ms: np.ndarray) -> float:
    return max([1.0] + [linalg.norm2(m) for m in ms])


# --- single-operator inequalities -------------------------------------------


@check("refine1", G1, ("nilpotent",), ("a_normal",), doc="||T||/2 <= omega <= ||T||")
def _refine1(ev, ops):
    (T,) = ops
    n, w = ev.norm(T), ev.omega(T)
    return [Link("half-norm", 0.5 * n, w), Link("norm", w, n)]


@check("apower", G1, ("a_normal",), doc="omega(T^k) <= omega(T)^k")
def _apower(ev, ops):
    (T,) = ops
    w = ev.omega(T)
    out, p = [], T
    for k in (2, 3, 4):
        p = p @ T
        out.append(Link(f"k={k}", ev.omega(p), w**k))
    return out


@check("kaisnew01", G1, doc="omega <= (||T|| + ||T^2||^(1/2))/2")
def _kaisnew01(ev, ops):
    (T,) = ops
    return [Link("bound", ev.omega(T), 0.5 * (ev.norm(T) + math.sqrt(ev.norm(T @ T))))]


@check("feki1_lo", G1, ("nilpotent",), doc="||T^#T + TT^#||/4 <= omega^2")
def _feki1_lo(ev, ops):
    (T,) = ops
    return [Link("lower", 0.25 * ev.jordan(T), ev.omega(T) ** 2)]


@check("feki1_hi", G1, ("a_normal",), doc="omega^2 <= ||T^#T + TT^#||/2")
def _feki1_hi(ev, ops):
    (T,) = ops
    return [Link("upper", ev.omega(T) ** 2, 0.5 * ev.jordan(T))]


@check("chain_remark", G1, doc="four-step chain between ||T||/2 and ||T||")
def _chain(ev, ops):
    (T,) = ops
    n, w, j = ev.norm(T), ev.omega(T), math.sqrt(ev.jordan(T))
    return [
        Link("1", 0.5 * n, 0.5 * j),
        Link("2", 0.5 * j, w),
        Link("3", w, math.sqrt(0.5) * j),
        Link("4", math.sqrt(0.5) * j, n),
    ]


@check("corr2020_lo", G1, doc="sqrt(||T^#T+TT^#|| + 2 c(T^2))/2 <= omega")
def _corr_lo(ev, ops):
    (T,) = ops
    return [Link("lower", 0.5 * math.sqrt(ev.jordan(T) + 2.0 * ev.craw(T @ T)), ev.omega(T))]


@check("corr2020_hi", G1, doc="omega <= sqrt(||T^#T+TT^#|| + 2 omega(T^2))/2, refining the upper bound")
def _corr_hi(ev, ops):
    (T,) = ops
    j = ev.jordan(T)
    mid = 0.5 * math.sqrt(j + 2.0 * ev.omega(T @ T))
    return [Link("upper", ev.omega(T), mid), Link("refines", mid, math.sqrt(0.5 * j))]


@check("omprovenew_lo", G1, doc="2||T^2|| <= ||T^#T + TT^#||")
def _omp_lo(ev, ops):
    (T,) = ops
    return [Link("lower", 2.0 * ev.norm(T @ T), ev.jordan(T))]


@check("omprovenew_hi", G1, doc="||T^#T + TT^#|| <= ||T^2|| + ||T||^2")
def _omp_hi(ev, ops):
    (T,) = ops
    return [Link("upper", ev.jordan(T), ev.norm(T @ T) + ev.norm(T) ** 2)]


@check("refined_kaisnew", G1, doc="omega <= sqrt(||T^2|| + ||T||^2 + 2 omega(T^2))/2 <= kaisnew01 bound")
def _refined_kaisnew(ev, ops):
    (T,) = ops
    n, n2 = ev.norm(T), ev.norm(T @ T)
    mid = 0.5 * math.sqrt(n2 + n * n + 2.0 * ev.omega(T @ T))
    return [Link("upper", ev.omega(T), mid), Link("refines", mid, 0.5 * (n + math.sqrt(n2)))]


@check("normloid_iff", ("a_normal",), ("nilpotent",), G1, doc="normaloid characterisation, quantitative form")
def _normloid(ev, ops):
    # g1 = ||T||^2 - ||T^#T+TT^#||/2 and g2 = ||T||^2 - ||T^2|| satisfy
    # g2/2 <= g1 <= g2, so g1 = 0 exactly when g2 = 0 (both directions)
    (T,) = ops
    n = ev.norm(T)
    g1 = n * n - 0.5 * ev.jordan(T)
    g2 = n * n - ev.norm(T @ T)
    out = [Link("g2/2<=g1", 0.5 * g2, g1), Link("g1<=g2", g1, g2)]
    if adjoint.classify(ev.space, T).a_normal:
        out += [Link("normal:g2=0", g2 + n * n, n * n, eq=True), Link("normal:g1=0", g1 + n * n, n * n, eq=True)]
    ev.info["g1"], ev.info["g2"] = g1, g2
    return out


@check("normloid_sq0", ("square_zero",), doc="A T^2 = 0 gives ||T||^2 = ||T^#T + TT^#||")
def _normloid_sq0(ev, ops):
    (T,) = ops
    return [Link("equality", ev.norm(T) ** 2, ev.jordan(T), eq=True)]


@check("eqnew15", G1, ("nilpotent",), doc="omega^2 <= (||T||^2 + omega(T^2))/2")
def _eqnew15(ev, ops):
    (T,) = ops
    mid = 0.5 * (ev.norm(T) ** 2 + ev.omega(T @ T))
    return [Link("upper", ev.omega(T) ** 2, mid), Link("below-norm", mid, ev.norm(T) ** 2)]


@check("aself1_eq", ("a_selfadjoint",), ("a_positive",), doc="A-selfadjoint: ||T|| = omega")
def _aself1(ev, ops):
    (T,) = ops
    return [Link("equality", ev.omega(T), ev.norm(T), eq=True)]


@check("diez_eq", G1, doc="||T^#T|| = ||TT^#|| = ||T||^2 = ||T^#||^2")
def _diez(ev, ops):
    (T,) = ops
    s = ev.sharp(T)
    vals = [ev.norm(s @ T), ev.norm(T @ s), ev.norm(T) ** 2, ev.norm(s) ** 2]
    tol = TRANSFER_TOL * max(1.0, max(vals))
    return [Link(f"{i}", v, vals[2], eq=True, tol=tol) for i, v in enumerate(vals) if i != 2]


@check("sharp_invariance", G1, doc="omega(T^#) = omega(T), c(T^#) = c(T), ||T^#|| = ||T||")
def _sharp_inv(ev, ops):
    (T,) = ops
    s = ev.sharp(T)
    return [
        Link("omega", ev.omega(s), ev.omega(T), eq=True),
        Link("crawford", ev.craw(s), ev.craw(T), eq=True),
        Link("norm", ev.norm(s), ev.norm(T), eq=True),
    ]


@check("sousmult", G2, doc="||TS|| <= ||T|| ||S||")
def _sousmult(ev, ops):
    T, S = ops
    return [Link("product", ev.norm(T @ S), ev.norm(T) * ev.norm(S))]


@check("newsemi", G1, doc="|<Tx|y>_A| and ||Tx||_A are bounded by ||T||_A on sampled vectors")
def _newsemi(ev, ops):
    (T,) = ops
    sp = ev.space
    n = ev.norm(T)
    X = sample_a_unit(sp, [ev.seed, 1], 64).T
    Y = sample_a_unit(sp, [ev.seed, 2], 64).T
    pair = np.abs(np.sum(Y.conj() * (sp.A @ T @ X), axis=0))
    # vectors with null-space components: the A-seminorm ignores them
    Z = sample_a_unit(sp, [ev.seed, 3], 64, include_null=True).T
    zn = np.sqrt(np.maximum(np.sum(Z.conj() * (sp.A @ Z), axis=0).real, 0.0))
    tz = np.sqrt(np.maximum(np.sum((T @ Z).conj() * (sp.A @ T @ Z), axis=0).real, 0.0))
    return [Link("pairing", float(pair.max()), n), Link("vector", float(np.max(tz - n * zn)) + n, n)]


@check("oracle_bound", G1, ("a_normal",), ("nilpotent",), doc="sampling bounds bracket the engine values")
def _oracle(ev, ops):
    (T,) = ops
    lb, slb, cub = radius.sampling_oracle(ev.space, T, seed=ev.seed, samples=ORACLE_SAMPLES, ascent_iters=ORACLE_ITERS)
    return [Link("omega", lb, ev.omega(T)), Link("seminorm", slb, ev.norm(T)), Link("crawford", ev.craw(T), cub)]


@check("lm1_eq", G1, ("a_selfadjoint",), doc="sup over alpha^2+beta^2=1 equals omega")
def _lm1(ev, ops):
    (T,) = ops
    return [Link("two-path", radius.sup_alpha_beta(ev.space, T, ev.grid_n), ev.omega(T), eq=True)]


# --- products and commutators ------------------------------------------------


@check("a7ad1", G2, doc="omega(TS) <= 4 omega(T) omega(S)")
def _a7ad1(ev, ops):
    T, S = ops
    return [Link("product", ev.omega(T @ S), 4.0 * ev.omega(T) * ev.omega(S))]


@check("a7ad2", ("commuting_pair",), doc="commuting: omega(TS) <= 2 omega(T) omega(S)")
def _a7ad2(ev, ops):
    T, S = ops
    return [Link("product", ev.omega(T @ S), 2.0 * ev.omega(T) * ev.omega(S))]


@check("jdid", G2, ("commuting_pair",), doc="omega(TS + ST) <= 4 omega(T) omega(S)")
def _jdid(ev, ops):
    T, S = ops
    return [Link("anticommutator", ev.omega(T @ S + S @ T), 4.0 * ev.omega(T) * ev.omega(S))]


@check("t215", G4, doc="omega(T1 S1 +- S2 T2) <= sqrt||T1T1^# + T2^#T2|| sqrt||S1^#S1 + S2S2^#||")
def _t215(ev, ops):
    T1, S1, T2, S2 = ops
    s = ev.sharp
    rhs = math.sqrt(ev.norm(T1 @ s(T1) + s(T2) @ T2)) * math.sqrt(ev.norm(s(S1) @ S1 + S2 @ s(S2)))
    return [Link("+", ev.omega(T1 @ S1 + S2 @ T2), rhs), Link("-", ev.omega(T1 @ S1 - S2 @ T2), rhs)]


@check("commu223", G2, doc="omega(TS +- ST) <= 2 sqrt2 min(||T|| omega(S), ||S|| omega(T))")
def _commu223(ev, ops):
    T, S = ops
    rhs = 2.0 * math.sqrt(2.0) * min(ev.norm(T) * ev.omega(S), ev.norm(S) * ev.omega(T))
    return [Link("+", ev.omega(T @ S + S @ T), rhs), Link("-", ev.omega(T @ S - S @ T), rhs)]


@check("fong_sharp", G2, doc="omega(TS +- S T^#) <= 2 ||T|| omega(S)")
def _fong(ev, ops):
    T, S = ops
    ts = ev.sharp(T)
    rhs = 2.0 * ev.norm(T) * ev.omega(S)
    return [Link("+", ev.omega(T @ S + S @ ts), rhs), Link("-", ev.omega(T @ S - S @ ts), rhs)]


@check("hooknew02", ("unitary_commuting_pair",), doc="U A-unitary, UT = TU: omega(UT) <= omega(T)")
def _hooknew02(ev, ops):
    U, T = ops
    return [Link("unitary-factor", ev.omega(U @ T), ev.omega(T))]


@check(
    "hooknew02222",
    ("double_commuting_pair",),
    ("normal_commuting_pair",),
    doc="double commuting: omega(TS) <= omega(S)||T|| and omega(ST) <= omega(T)||S||",
)
def _hooknew02222(ev, ops):
    T, S = ops
    return [
        Link("TS", ev.omega(T @ S), ev.omega(S) * ev.norm(T)),
        Link("ST", ev.omega(S @ T), ev.omega(T) * ev.norm(S)),
    ]


@check("isometry_corr", ("unitary_commuting_pair",), doc="T A-isometry, double commuting: omega(TS) <= omega(S)")
def _isometry_corr(ev, ops):
    T, S = ops
    return [Link("isometry-factor", ev.omega(T @ S), ev.omega(S))]


@check(
    "hook02000",
    ("double_commuting_pair",),
    ("normal_commuting_pair",),
    doc="T A-normal, TS = ST: omega(TS) <= omega(T) omega(S)",
)
def _hook02000(ev, ops):
    T, S = ops
    return [Link("normal-factor", ev.omega(T @ S), ev.omega(T) * ev.omega(S))]


# --- operator matrices -------------------------------------------------------


@check("r62", G2, ("commuting_pair",), doc="off-diagonal radius <= min Psi <= (||T|| + ||S||)/2")
def _r62(ev, ops):
    T, S = ops
    w = ev.odr(T, S)
    p1, p2 = ev.psi(T, S), ev.psi(S, T)
    # the displayed variant with ||T + S||/2 is not a valid bound (S = -T);
    # it is recorded but never asserted
    ev.info["display_margin"] = 0.5 * ev.norm(T + S) - w
    return [Link("psi(T,S)", w, p1), Link("psi(S,T)", w, p2), Link("norm-sum", min(p1, p2), 0.5 * (ev.norm(T) + ev.norm(S)))]


@check("r61", G2, ("commuting_pair",), doc="max Phi <= off-diagonal radius")
def _r61(ev, ops):
    T, S = ops
    return [Link("phi", max(ev.phi(T, S), ev.phi(S, T)), ev.odr(T, S))]


@check("ppp", G1, ("a_normal",), doc="omega_AA([[0,T],[T,0]]) = omega(T)")
def _ppp(ev, ops):
    (T,) = ops
    return [Link("equality", ev.odr(T, T), ev.omega(T), eq=True)]


@check("jdidddd_eq", G2, doc="off-diagonal formula equals the doubled-space radius; swap symmetry")
def _jdidddd(ev, ops):
    T, S = ops
    w = ev.odr(T, S)
    direct = blocks.off_diag_radius_direct(ev.space, T, S, ev.grid_n)
    ev.error += direct.error_bound
    return [Link("direct", w, direct.value, eq=True), Link("swap", ev.odr(S, T), w, eq=True)]


@check("involution", ("block_diag",), doc="closed forms for [[I,T],[0,-I]]")
def _involution(ev, ops):
    (T,) = ops
    m = blocks.involution_metrics(ev.space, T, ev.grid_n)
    return [Link("max-rel-error", m.max_rel_error(), 0.0, eq=True, tol=1e-7)]


# --- structural residuals ------------------------------------------------------


@check("lm4_residual", G4, doc="doubled-space adjoint of a block matrix is blockwise")
def _lm4(ev, ops):
    s = [ev.sharp(t) for t in ops]
    res = blocks.block_sharp_residual(ev.space, *ops)
    return [Link("residual", res, 0.0, eq=True, tol=STRUCT_TOL * _scale(*s))]


@check("lm3_residual", ("a_selfadjoint",), G1, doc="(T^#)^# = P T P, and = T^# when T is A-selfadjoint")
def _lm3(ev, ops):
    (T,) = ops
    sp = ev.space
    s = ev.sharp(T)
    ss = adjoint.sharp_unchecked(sp, s)
    P = sp.projR
    out = [Link("double", linalg.norm2(ss - P @ T @ P), 0.0, eq=True, tol=STRUCT_TOL * _scale(ss, T))]
    if adjoint.classify(sp, T).a_selfadjoint:
        out.append(Link("selfadjoint", linalg.norm2(adjoint.sharp_unchecked(sp, ss) - s), 0.0, eq=True, tol=STRUCT_TOL * _scale(s)))
    return out


@check("lr2_transfer", G1, doc="seminorm and radius through the reduction match the ambient paths")
def _lr2(ev, ops):
    (T,) = ops
    sp = ev.space
    B = tilde.reduce(sp, T).B
    amb_norm = linalg.norm2(sp.sqrtA @ T @ sp.pinv_sqrtA)
    amb_omega = radius.sup_alpha_beta(sp, T, ev.grid_n)
    return [
        Link("seminorm", amb_norm, linalg.norm2(B), eq=True, tol=TRANSFER_TOL),
        Link("omega", amb_omega, radius.omega_of(B, ev.grid_n).value, eq=True, tol=TRANSFER_TOL),
    ]


@check("lr3_residual", G1, doc="the reduction of T^# is the adjoint of the reduction of T")
def _lr3(ev, ops):
    (T,) = ops
    B = tilde.reduce(ev.space, T).B
    return [Link("residual", tilde.tilde_sharp_is_adjoint(ev.space, T), 0.0, eq=True, tol=STRUCT_TOL * _scale(B))]


@check("prosum_residual", G2, doc="the reduction is multiplicative and additive")
def _prosum(ev, ops):
    T, S = ops
    bt, bs = tilde.reduce(ev.space, T).B, tilde.reduce(ev.space, S).B
    mul, add = tilde.tilde_homomorphism(ev.space, T, S)
    return [
        Link("product", mul, 0.0, eq=True, tol=STRUCT_TOL * _scale(bt @ bs, bt, bs)),
        Link("sum", add, 0.0, eq=True, tol=STRUCT_TOL * _scale(bt, bs)),
    ]


# --- evaluation --------------------------------------------------------------


def evaluate_links(name: str, links: list[Link], error: float, instance, info=None) -> CheckResult:
    """Pick the tightest link and decide pass/fail under the slack policy."""
    if not links:
        return CheckResult(name, 0.0, 0.0, 0.0, True, 0.0, instance, "", info=dict(info or {}))
    scored = [(lk.margin() + lk.slack(error), lk) for lk in links]
    _, worst = min(scored, key=lambda p: p[0])
    slack = worst.slack(error)
    margin = worst.margin()
    return CheckResult(
        name,
        float(worst.lhs),
        float(worst.rhs),
        float(margin),
        bool(margin >= -slack),
        float(slack),
        instance,
        worst.label,
        info=dict(info or {}),
    )


def run_check(
    name: str,
    space: SemiInnerSpace,
    operators: list,
    instance: InstanceSpec | None = None,
    grid_n: int = radius.GRID_N,
) -> CheckResult:
    """Evaluate one registered check on an explicit instance.

    Raises
    ------
    KeyError
        Unknown check name.
    """
    spec = REGISTRY[name]
    ops = [linalg.as_cmatrix(T, square=True) for T in operators]
    ev = Evaluator(space, 0 if instance is None else instance.seed, grid_n)
    links = spec.fn(ev, ops)
    return evaluate_links(name, links, ev.error, instance, ev.info)


def trial_spec(name: str, seed: int, trial: int, dim: int, rank: int) -> InstanceSpec:
    ss = np.random.SeedSequence([seed & (2**64 - 1), zlib.crc32(name.encode()), trial])
    inst_seed = int(ss.generate_state(2, dtype=np.uint32).astype(np.uint64) @ np.array([1, 2**32], dtype=np.uint64))
    return InstanceSpec(inst_seed, dim, rank, REGISTRY[name].classes_for(trial))


def run_trial(name: str, spec: InstanceSpec, grid_n: int = radius.GRID_N) -> CheckResult:
    space, ops = generate(spec)
    return run_check(name, space, ops, spec, grid_n)
