"""Randomised campaigns over the check registry and their reports."""

from __future__ import annotations

import fnmatch
import hashlib
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .. import __version__, kernels, radius
from .checks import REGISTRY, CheckResult, run_trial, trial_spec

DEFAULT_DIMS = (2, 3, 4, 6, 8)
DEFAULT_RANKS = ("full", "n-1", "half")
DEFAULT_TRIALS = 200
DEFAULT_SEED = 20240607


def resolve_rank(token: str | int, n: int) -> int | None:
    """Rank for dimension ``n``; ``None`` when the token does not apply."""
    if isinstance(token, int) or str(token).isdigit():
        r = int(token)
        return r if 1 <= r <= n else None
    if token == "full":
        return n
    if token == "n-1":
        return n - 1 if n > 1 else None
    if token == "half":
        return (n + 1) // 2
    raise ValueError(f"unknown rank token {token!r} (use full, n-1, half or an integer)")


def select_checks(patterns) -> list[str]:
    """Registry names matching ``patterns`` (all when ``None``), in registry order.

    Plain names must exist; glob patterns may match nothing.
    """
    if patterns is None:
        return list(REGISTRY)
    chosen = set()
    for p in patterns:
        if any(ch in p for ch in "*?["):
            chosen.update(fnmatch.filter(REGISTRY, p))
        elif p in REGISTRY:
            chosen.add(p)
        else:
            raise ValueError(f"unknown check {p!r}")
    return [n for n in REGISTRY if n in chosen]


@dataclass(frozen=True)
class CampaignConfig:
    dims: tuple[int, ...] = DEFAULT_DIMS
    ranks: tuple = DEFAULT_RANKS
    trials_per_check: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    checks: tuple[str, ...] | None = None
    grid_n: int = radius.GRID_N

    def configs(self) -> list[tuple[int, int]]:
        out = []
        for n in self.dims:
            if not 1 <= n <= 32:
                raise ValueError(f"dimension {n} outside 1..32")
            rs = {resolve_rank(t, n) for t in self.ranks} - {None}
            out.extend((n, r) for r in sorted(rs, reverse=True))
        if not out:
            raise ValueError("no (dim, rank) configuration selected")
        return out

    def as_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "ranks": [str(r) for r in self.ranks],
            "trials_per_check": self.trials_per_check,
            "seed": self.seed,
            "checks": None if self.checks is None else list(self.checks),
            "grid_n": self.grid_n,
        }

    def digest(self) -> str:
        blob = json.dumps(self.as_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class CheckSummary:
    name: str
    trials: int = 0
    failures: int = 0
    errors: int = 0
    min_margin: float = math.inf
    margin_sum: float = 0.0
    worst: CheckResult | None = None
    worst_error: str = ""
    info: dict = field(default_factory=dict)

    @property
    def mean_margin(self) -> float:
        ok = self.trials - self.errors
        return self.margin_sum / ok if ok else 0.0

    def add(self, res: CheckResult | str) -> None:
        self.trials += 1
        if isinstance(res, str):
            self.errors += 1
            self.failures += 1
            self.worst_error = self.worst_error or res
            return
        if not res.passed:
            self.failures += 1
        self.margin_sum += res.margin
        # rank by margin relative to slack so equalities and inequalities compare
        key = res.margin + res.slack
        if self.worst is None or key < self.worst.margin + self.worst.slack:
            self.worst = res
        self.min_margin = min(self.min_margin, res.margin)
        dm = res.info.get("display_margin")
        if dm is not None:
            self.info["display_bound_trials"] = self.info.get("display_bound_trials", 0) + 1
            if dm < -res.slack:
                self.info["display_bound_violations"] = self.info.get("display_bound_violations", 0) + 1

    def as_dict(self) -> dict:
        w = self.worst
        return {
            "name": self.name,
            "trials": self.trials,
            "failures": self.failures,
            "errors": self.errors,
            "min_margin": None if self.worst is None else self.min_margin,
            "mean_margin": None if self.worst is None else self.mean_margin,
            "worst_instance": None if w is None else w.instance.as_dict(),
            "worst_link": None if w is None else w.link,
            "worst_lhs": None if w is None else w.lhs,
            "worst_rhs": None if w is None else w.rhs,
            "worst_slack": None if w is None else w.slack,
            "first_error": self.worst_error or None,
            "info": dict(sorted(self.info.items())),
        }


@dataclass
class Report:
    config: CampaignConfig
    checks: list[CheckSummary]
    runtime: float = 0.0  # kept out of the serialized report (determinism)

    @property
    def failures(self) -> int:
        return sum(c.failures for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        meta = {
            "version": __version__,
            "backend": kernels.BACKEND,
            "config": self.config.as_dict(),
            "config_digest": self.config.digest(),
            "slack_policy": {"eps_abs": 1e-9, "eps_rel": 1e-7, "inflation": "2 * sum(error_bound) * max(1, |rhs|)"},
            "total_trials": sum(c.trials for c in self.checks),
            "total_failures": self.failures,
        }
        return {"meta": meta, "checks": [c.as_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_markdown(self) -> str:
        lines = [
            f"# Verification report (seed {self.config.seed}, digest {self.config.digest()})",
            "",
            "| check | trials | failures | min margin | mean margin | worst link |",
            "|---|---:|---:|---:|---:|---|",
        ]
        for c in self.checks:
            d = c.as_dict()
            mm = "n/a" if d["min_margin"] is None else f"{d['min_margin']:.3e}"
            me = "n/a" if d["mean_margin"] is None else f"{d['mean_margin']:.3e}"
            lines.append(f"| {c.name} | {c.trials} | {c.failures} | {mm} | {me} | {d['worst_link'] or ''} |")
        lines += ["", f"Total failures: {self.failures}", ""]
        return "\n".join(lines)


def worker_count() -> int:
    cap = os.environ.get("SEMIHILBERT_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def _task(args) -> CheckResult | str:
    name, spec, grid_n = args
    try:
        return run_trial(name, spec, grid_n)
    except Exception as exc:  # failures are data, not crashes
        return f"{type(exc).__name__}: {exc}"


def campaign(config: CampaignConfig = CampaignConfig(), workers: int | None = None) -> Report:
    """Run every selected check ``trials_per_check`` times.

    Trial ``i`` of a check uses configuration ``i mod len(configs)`` and an
    instance seed derived from ``(seed, check name, i)``, so results do not
    depend on worker count or scheduling.
    """
    if config.trials_per_check < 1:
        raise ValueError("trials_per_check must be at least 1")
    t0 = time.perf_counter()
    names = select_checks(config.checks)
    cfgs = config.configs()
    tasks = []
    for name in names:
        for i in range(config.trials_per_check):
            n, r = cfgs[i % len(cfgs)]
            tasks.append((name, trial_spec(name, config.seed, i, n, r), config.grid_n))
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_task, tasks, chunksize=16))
    else:
        results = [_task(t) for t in tasks]
    summaries = {n: CheckSummary(n) for n in names}
    for (name, _, _), res in zip(tasks, results):
        summaries[name].add(res)
    return Report(config, [summaries[n] for n in names], time.perf_counter() - t0)

