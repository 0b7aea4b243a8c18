"""Benchmark the angle-sweep kernel: compiled extension vs numpy fallback.

Usage::

    python benchmarks/bench_sweep.py --dims 2,4,8,16 --repeat 20
"""

import argparse
import json
import sys
import time

import numpy as np

from semihilbert import _sweep_py
from semihilbert.kernels import HERM_MIN, HERM_NORM, PENCIL_NORM, SIGMA_MAX

try:
    from semihilbert import _sweep as _compiled
except ImportError:  # extension not built
    _compiled = None

MODES = {"herm_norm": HERM_NORM, "herm_min": HERM_MIN, "sigma_max": SIGMA_MAX, "pencil_norm": PENCIL_NORM}


def _operands(mode: int, n: int, rng: np.random.Generator):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    if mode == PENCIL_NORM:
        H = X + X.conj().T
        K = 1j * (X - X.conj().T)
        return H, K
    if mode == SIGMA_MAX:
        return X, rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return X, X


def _time(fn, repeat: int) -> float:
    fn()  # warm-up
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dims", default="2,4,8,16")
    p.add_argument("--modes", default=",".join(MODES))
    p.add_argument("--grid", type=int, default=720)
    p.add_argument("--repeat", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="print JSON rows instead of a table")
    args = p.parse_args(argv)
    if _compiled is None:
        sys.stderr.write("compiled extension not built; only the fallback is timed\n")
    rng = np.random.default_rng(args.seed)
    rows = []
    for name in args.modes.split(","):
        mode = MODES[name]
        hi = 2 * np.pi if mode == HERM_MIN else np.pi
        for n in (int(d) for d in args.dims.split(",")):
            X, Y = _operands(mode, n, rng)
            py = _time(lambda: _sweep_py.sweep(mode, X, Y, 0.0, hi, args.grid, 1e-10), args.repeat)
            row = {"mode": name, "dim": n, "python_ms": 1e3 * py}
            if _compiled is not None:
                cy = _time(lambda: _compiled.sweep(mode, X, Y, 0.0, hi, args.grid, 1e-10), args.repeat)
                v_py = _sweep_py.sweep(mode, X, Y, 0.0, hi, args.grid, 1e-10)[0]
                v_cy = _compiled.sweep(mode, X, Y, 0.0, hi, args.grid, 1e-10)[0]
                row.update(cython_ms=1e3 * cy, speedup=py / cy, abs_diff=abs(v_py - v_cy))
            rows.append(row)
    if args.json:
        for r in rows:
            print(json.dumps(r))
        return 0
    print(f"{'mode':12s} {'dim':>4s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s} {'|diff|':>9s}")
    for r in rows:
        cy = f"{r['cython_ms']:10.3f} {r['speedup']:8.2f} {r['abs_diff']:9.1e}" if "cython_ms" in r else ""
        print(f"{r['mode']:12s} {r['dim']:4d} {r['python_ms']:10.3f} {cy}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
