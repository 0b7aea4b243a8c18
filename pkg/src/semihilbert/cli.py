"""Command-line interface: ``semihilbert <verb> ...``.

Verbs: compute, adjoint, verify, range, sharpness, oracle.
Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import adjoint, instance, radius
from .errors import NotAdmissible, SemiHilbertError, Unbounded

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
INFINITE = "infinite"
ORACLE_SLACK = 1e-8


class UsageError(Exception):
    pass


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _load(args):
    inst = instance.load(args.instance)
    space = inst.space()
    T = inst.operator(args.operator)
    return inst, space, T


def _membership(space, T) -> dict:
    m = adjoint.membership(space, T)
    return {
        "in_b_a": m.in_b_a,
        "in_b_a_half": m.in_b_a_half,
        "douglas_residual": m.douglas,
        "invariance_residual": m.invariance,
        "borderline": m.borderline,
    }


def cmd_compute(args) -> int:
    _, space, T = _load(args)
    flags = adjoint.classify(space, T)
    out = {"operator": args.operator, "rank_A": space.r}
    try:
        n = radius.op_seminorm(space, T)
        w = radius.numerical_radius(space, T, args.grid)
        c = radius.crawford(space, T, args.grid)
        out.update(seminorm=n.value, omega=w.value, crawford=c.value)
        out["error_bounds"] = {"seminorm": n.error_bound, "omega": w.error_bound, "crawford": c.error_bound}
    except Unbounded:
        # W_A(T) is the whole plane: unbounded radius, zero distance to 0
        out.update(seminorm=INFINITE, omega=INFINITE, crawford=0.0, error_bounds={})
    out["classes"] = {k: v for k, v in flags.as_dict().items() if k != "residuals"}
    out["class_residuals"] = flags.residuals
    out["membership"] = _membership(space, T)
    _emit(out)
    return EXIT_OK


def cmd_adjoint(args) -> int:
    _, space, T = _load(args)
    try:
        s = adjoint.sharp(space, T)
    except NotAdmissible as exc:
        _emit({"operator": args.operator, "admissible": False, "reason": str(exc), "sharp": None})
        return EXIT_OK
    _emit({"operator": args.operator, "admissible": True, "sharp": instance.matrix_to_json(s)})
    return EXIT_OK


def _svg(points: np.ndarray, crawford: float, omega: float) -> str:
    size, pad = 400.0, 20.0
    extent = max(omega, 1e-12) * 1.1
    scale = (size / 2 - pad) / extent

    def xy(z: complex) -> str:
        return f"{size / 2 + scale * z.real:.6f},{size / 2 - scale * z.imag:.6f}"

    poly = " ".join(xy(z) for z in points)
    c = size / 2
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:g}" height="{size:g}" viewBox="0 0 {size:g} {size:g}">\n'
        f'  <line x1="0" y1="{c:g}" x2="{size:g}" y2="{c:g}" stroke="#bbb"/>\n'
        f'  <line x1="{c:g}" y1="0" x2="{c:g}" y2="{size:g}" stroke="#bbb"/>\n'
        f'  <polygon points="{poly}" fill="#9ecae1" fill-opacity="0.5" stroke="#08519c"/>\n'
        f'  <circle cx="{c:g}" cy="{c:g}" r="{scale * crawford:.6f}" fill="none" stroke="#de2d26" stroke-dasharray="4 3"/>\n'
        f'  <circle cx="{c:g}" cy="{c:g}" r="{scale * omega:.6f}" fill="none" stroke="#636363" stroke-dasharray="1 3"/>\n'
        "</svg>\n"
    )


def cmd_range(args) -> int:
    if args.points < 8:
        raise UsageError("--points must be at least 8")
    _, space, T = _load(args)
    try:
        rb = radius.numerical_range_boundary(space, T, args.points)
    except Unbounded:
        sys.stderr.write("W_A(T) = C: T(N(A)) is not contained in N(A), so the A-numerical range is the whole plane\n")
        return EXIT_USAGE
    if args.format == "csv":
        lines = ["theta,re,im"]
        lines += [f"{t:.17g},{z.real:.17g},{z.imag:.17g}" for t, z in zip(rb.angles, rb.support_points)]
        text = "\n".join(lines) + "\n"
    else:
        c = radius.crawford(space, T, args.grid).value
        w = radius.numerical_radius(space, T, args.grid).value
        text = _svg(rb.support_points, c, w)
    if args.out:
        instance.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _csv_list(text: str, cast, what: str):
    try:
        items = [cast(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"invalid {what}: {text!r}") from None
    if not items:
        raise UsageError(f"empty {what}")
    return tuple(items)


def cmd_verify(args) -> int:
    from .suite.campaign import CampaignConfig, campaign, select_checks
    from .suite.checks import REGISTRY

    if args.list:
        for name, spec in REGISTRY.items():
            sys.stdout.write(f"{name:18s} {spec.description}\n")
        return EXIT_OK
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    checks = None if args.checks is None else _csv_list(args.checks, str, "check list")
    cfg = CampaignConfig(
        dims=_csv_list(args.dims, int, "dimension list"),
        ranks=_csv_list(args.ranks, str, "rank list"),
        trials_per_check=args.trials,
        seed=args.seed,
        checks=checks,
        grid_n=args.grid,
    )
    try:
        select_checks(cfg.checks)
        cfg.configs()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = campaign(cfg)
    if args.out:
        instance.write_atomic(args.out, report.to_json())
    if args.md:
        instance.write_atomic(args.md, report.to_markdown())
    for c in report.checks:
        status = "ok" if c.failures == 0 else "FAIL"
        sys.stdout.write(f"{c.name:18s} trials={c.trials:4d} failures={c.failures:3d} {status}\n")
    sys.stdout.write(f"total failures: {report.failures}\n")
    sys.stderr.write(f"runtime: {report.runtime:.1f} s\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_sharpness(args) -> int:
    from .suite.sharpness import sharpness_scenarios

    results = sharpness_scenarios(seed=args.seed)
    rows = []
    for r in results:
        sys.stdout.write(f"{r.name:24s} margin={r.margin: .3e} tol={r.slack:.1e} {'ok' if r.passed else 'FAIL'}\n")
        rows.append({"name": r.name, "margin": r.margin, "tolerance": r.slack, "passed": r.passed, **r.info})
    if args.out:
        instance.write_atomic(args.out, json.dumps({"seed": args.seed, "scenarios": rows}, indent=2) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_oracle(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    _, space, T = _load(args)
    try:
        n = radius.op_seminorm(space, T)
        w = radius.numerical_radius(space, T, args.grid)
        c = radius.crawford(space, T, args.grid)
    except Unbounded:
        _emit({"operator": args.operator, "seminorm": INFINITE, "omega": INFINITE})
        return EXIT_OK
    ob = radius.sampling_oracle(space, T, seed=args.seed, samples=args.samples, ascent_iters=args.iters)
    diff = {"omega": w.value - ob.omega_lb, "seminorm": n.value - ob.seminorm_lb, "crawford": ob.crawford_ub - c.value}
    slack = {
        "omega": ORACLE_SLACK + w.error_bound,
        "seminorm": ORACLE_SLACK + n.error_bound,
        "crawford": ORACLE_SLACK + c.error_bound,
    }
    ok = all(diff[k] >= -slack[k] for k in diff)
    _emit(
        {
            "operator": args.operator,
            "samples": args.samples,
            "seed": args.seed,
            "engine": {"omega": w.value, "seminorm": n.value, "crawford": c.value},
            "oracle": {"omega_lb": ob.omega_lb, "seminorm_lb": ob.seminorm_lb, "crawford_ub": ob.crawford_ub},
            "difference": diff,
            "consistent": ok,
        }
    )
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semihilbert", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, operator=True):
        if operator:
            sp.add_argument("instance", help="instance JSON file")
            sp.add_argument("operator", help="operator name inside the instance")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--grid", type=int, default=radius.GRID_N, help="angle grid size")

    sp = sub.add_parser("compute", help="seminorm, radius, Crawford number and classes")
    common(sp)
    sp.set_defaults(fn=cmd_compute)

    sp = sub.add_parser("adjoint", help="print the A-adjoint")
    common(sp)
    sp.set_defaults(fn=cmd_adjoint)

    sp = sub.add_parser("range", help="export the A-numerical range boundary")
    common(sp)
    sp.add_argument("--points", type=int, default=360)
    sp.add_argument("--format", choices=("csv", "svg"), default="csv")
    sp.add_argument("--out", help="output file (default: stdout)")
    sp.set_defaults(fn=cmd_range)

    from .suite.campaign import DEFAULT_SEED, DEFAULT_TRIALS

    sp = sub.add_parser("verify", help="run the randomised inequality campaign")
    common(sp, operator=False)
    sp.set_defaults(seed=DEFAULT_SEED)
    sp.add_argument("--dims", default="2,3,4,6,8")
    sp.add_argument("--ranks", default="full,n-1,half", help="tokens full, n-1, half or integers")
    sp.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="trials per check")
    sp.add_argument("--checks", help="comma-separated names or glob patterns")
    sp.add_argument("--out", help="JSON report path")
    sp.add_argument("--md", help="markdown report path")
    sp.add_argument("--list", action="store_true", help="list registered checks and exit")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("sharpness", help="run the equality scenarios")
    common(sp, operator=False)
    sp.add_argument("--out", help="JSON summary path")
    sp.set_defaults(fn=cmd_sharpness)

    sp = sub.add_parser("oracle", help="compare engine values with sampled bounds")
    common(sp)
    sp.add_argument("--samples", type=int, default=20000)
    sp.add_argument("--iters", type=int, default=30)
    sp.set_defaults(fn=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.grid < 8:
        sys.stderr.write("semihilbert: --grid must be at least 8\n")
        return EXIT_USAGE
    try:
        return args.fn(args)
    except (UsageError, SemiHilbertError, OSError) as exc:
        sys.stderr.write(f"semihilbert: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
