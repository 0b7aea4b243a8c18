"""Equality cases showing that the constants in the main bounds are attained."""

from __future__ import annotations

import zlib

import numpy as np

from .. import blocks
from ..space import validate_positive
from .checks import CheckResult, Evaluator, Link, evaluate_links
from .generators import InstanceSpec, generate

SHARP_TOL = 1e-7
EXACT_TOL = 1e-9
INSTANCES = 50
ALPHAS = (0.5, 1.0, 2.0, 3.0)
_DIMS = ((2, 2), (2, 1), (3, 3), (3, 2), (4, 4), (4, 2), (6, 5), (6, 3), (8, 8), (8, 4))


def _specs(seed: int, cls: str, count: int) -> list[InstanceSpec]:
    ss = np.random.SeedSequence([seed, zlib.crc32(cls.encode())])
    seeds = ss.generate_state(count, dtype=np.uint64)
    return [InstanceSpec(int(s), *_DIMS[i % len(_DIMS)], (cls,)) for i, s in enumerate(seeds)]


def _worst(name: str, per_instance: list[tuple[InstanceSpec | None, Link, float]]) -> CheckResult:
    best = None
    for spec, link, err in per_instance:
        res = evaluate_links(name, [link], err, spec)
        if best is None or res.margin + res.slack < best.margin + best.slack:
            best = res
    best.info["instances"] = len(per_instance)
    best.info["max_abs_margin"] = max(abs(evaluate_links(name, [lk], e, s).margin) for s, lk, e in per_instance)
    return best


def normal_upper(seed: int = 0, count: int = INSTANCES) -> CheckResult:
    """(a) A-normal operators attain omega^2 = ||T^#T + TT^#||/2."""
    rows = []
    for spec in _specs(seed, "a_normal", count):
        space, (T,) = generate(spec)
        ev = Evaluator(space, spec.seed)
        j = 0.5 * ev.jordan(T)
        rows.append((spec, Link("feki1_hi", ev.omega(T) ** 2, j, eq=True, tol=SHARP_TOL * max(1.0, j)), ev.error))
    return _worst("sharp_normal_upper", rows)


def nilpotent_lower(alphas=ALPHAS) -> CheckResult:
    """(b) A = alpha I and the elementary nilpotent attain omega^2 = ||T^#T + TT^#||/4."""
    T = np.array([[0, 1], [0, 0]], dtype=np.complex128)
    rows = []
    for a in alphas:
        ev = Evaluator(validate_positive(a * np.eye(2)))
        rows.append((None, Link(f"alpha={a}", ev.omega(T) ** 2, 0.25 * ev.jordan(T), eq=True, tol=EXACT_TOL), ev.error))
    return _worst("sharp_nilpotent_lower", rows)


def selfadjoint_norm(seed: int = 0, count: int = INSTANCES) -> CheckResult:
    """(c) A-selfadjoint operators have omega = ||T||."""
    rows = []
    for spec in _specs(seed, "a_selfadjoint", count):
        space, (T,) = generate(spec)
        ev = Evaluator(space, spec.seed)
        n = ev.norm(T)
        rows.append((spec, Link("aself1", ev.omega(T), n, eq=True, tol=SHARP_TOL * max(1.0, n)), ev.error))
    return _worst("sharp_selfadjoint", rows)


def involution_identity(seed: int = 0, count: int = INSTANCES) -> CheckResult:
    """(d) closed forms of [[I, T], [0, -I]], including T = 0."""
    space0 = validate_positive(np.diag([1.0, 0.0]))
    zero = blocks.involution_metrics(space0, np.zeros((2, 2)))
    rows = [(None, Link("T=0", zero.max_rel_error(), 0.0, eq=True, tol=SHARP_TOL), 0.0)]
    for spec in _specs(seed, "block_diag", count):
        space, (T,) = generate(spec)
        m = blocks.involution_metrics(space, T)
        rows.append((spec, Link("closed-forms", m.max_rel_error(), 0.0, eq=True, tol=SHARP_TOL), 0.0))
    return _worst("sharp_involution", rows)


def offdiag_equal(seed: int = 0, count: int = INSTANCES) -> CheckResult:
    """(e) omega_AA([[0, T], [T, 0]]) = omega_A(T)."""
    rows = []
    for spec in _specs(seed, "generic", count):
        space, (T,) = generate(spec)
        ev = Evaluator(space, spec.seed)
        w = ev.omega(T)
        rows.append((spec, Link("ppp", ev.odr(T, T), w, eq=True, tol=SHARP_TOL * max(1.0, w)), ev.error))
    return _worst("sharp_offdiag", rows)


def sharpness_scenarios(seed: int = 0, count: int = INSTANCES) -> list[CheckResult]:
    return [
        normal_upper(seed, count),
        nilpotent_lower(),
        selfadjoint_norm(seed, count),
        involution_identity(seed, count),
        offdiag_equal(seed, count),
    ]

