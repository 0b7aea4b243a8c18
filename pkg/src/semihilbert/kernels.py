"""Backend selection for the angle-sweep kernel.

The compiled ``_sweep`` extension is used when it was built; otherwise the
numpy implementation in ``_sweep_py`` is used.  Setting the environment
variable ``SEMIHILBERT_BACKEND=python`` forces the fallback.
"""

import os

from . import _sweep_py
from ._sweep_py import HERM_MIN, HERM_NORM, PENCIL_NORM, SIGMA_MAX

__all__ = ["BACKEND", "sweep", "grid_values", "HERM_NORM", "HERM_MIN", "SIGMA_MAX", "PENCIL_NORM"]

_compiled = None
if os.environ.get("SEMIHILBERT_BACKEND", "").lower() != "python":
    try:
        from . import _sweep as _compiled
    except ImportError:  # extension not built
        _compiled = None

if _compiled is not None:
    BACKEND = "cython"
    sweep = _compiled.sweep
    grid_values = _compiled.grid_values
else:
    BACKEND = "python"
    sweep = _sweep_py.sweep

    def grid_values(mode, X, Y, lo, hi, grid_n):
        import numpy as np

        h = (hi - lo) / grid_n
        return _sweep_py._grid(
            mode,
            lo + h * np.arange(grid_n),
            np.ascontiguousarray(X, dtype=np.complex128),
            np.ascontiguousarray(Y, dtype=np.complex128),
        )
