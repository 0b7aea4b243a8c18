import math

import numpy as np
import pytest

from semihilbert import _sweep_py, kernels

from conftest import crandn

try:
    from semihilbert import _sweep as compiled
except ImportError:  # pragma: no cover - extension not built
    compiled = None

needs_ext = pytest.mark.skipif(compiled is None, reason="compiled extension not built")
MODES = (kernels.HERM_NORM, kernels.HERM_MIN, kernels.SIGMA_MAX, kernels.PENCIL_NORM)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@needs_ext
@pytest.mark.parametrize("mode", MODES)
def test_grid_values_agree(mode, rng):
    for m in (1, 2, 5, 9):
        X, Y = crandn(rng, m, m), crandn(rng, m, m)
        if mode == kernels.PENCIL_NORM:
            X, Y = X + X.conj().T, Y + Y.conj().T
        a = compiled.grid_values(mode, X, Y, 0.0, math.pi, 64)
        b = _sweep_py._grid(mode, np.linspace(0, math.pi, 64, endpoint=False), X, Y)
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


@needs_ext
@pytest.mark.parametrize("mode", MODES)
def test_sweep_agrees(mode, rng):
    for m in (1, 3, 6):
        X, Y = crandn(rng, m, m), crandn(rng, m, m)
        if mode == kernels.PENCIL_NORM:
            X, Y = X + X.conj().T, Y + Y.conj().T
        va, _ = compiled.sweep(mode, X, Y, 0.0, 2 * math.pi, 360, 1e-10)
        vb, _ = _sweep_py.sweep(mode, X, Y, 0.0, 2 * math.pi, 360, 1e-10)
        assert va == pytest.approx(vb, rel=1e-12, abs=1e-13)


def test_python_sweep_known_values():
    nil = np.array([[0, 1], [0, 0]], dtype=complex)
    v, _ = _sweep_py.sweep(kernels.HERM_NORM, nil, nil, 0.0, math.pi, 720, 1e-10)
    assert v == pytest.approx(0.5, abs=1e-12)
    v, _ = _sweep_py.sweep(kernels.SIGMA_MAX, np.array([[2j]]), np.array([[1.0]]), 0.0, math.pi, 720, 1e-10)
    assert v == pytest.approx(3.0, abs=1e-12)


def test_candidates_periodic():
    g = np.array([5.0, 1.0, 2.0, 1.0, 4.0])
    assert _sweep_py.candidates(g, 8) == [0, 2]
    assert _sweep_py.candidates(np.ones(4), 2) == [0, 1]
