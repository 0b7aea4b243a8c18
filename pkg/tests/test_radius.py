import math

import numpy as np
import pytest

from semihilbert import linalg, radius
from semihilbert.errors import Unbounded
from semihilbert.space import validate_positive
from semihilbert.suite.generators import InstanceSpec, generate

from conftest import NIL, SWAP, crandn


def test_seminorm_examples(eye2, singular2):
    assert radius.op_seminorm(eye2, NIL).value == pytest.approx(1)
    assert radius.op_seminorm(validate_positive(np.diag([2.0, 1.0])), NIL).value == pytest.approx(math.sqrt(2))
    assert radius.op_seminorm(eye2, np.zeros((2, 2))).value == 0
    with pytest.raises(Unbounded):
        radius.op_seminorm(singular2, SWAP)


def test_numerical_radius_examples(eye2, rng):
    g = crandn(rng, 2, 2)
    H = g + g.conj().T
    assert radius.numerical_radius(eye2, H).value == pytest.approx(np.max(np.abs(np.linalg.eigvalsh(H))), abs=1e-12)
    w = radius.numerical_radius(eye2, NIL)
    assert w.value == pytest.approx(0.5, abs=1e-12)
    assert w.method == "theta-sup" and w.error_bound >= 0
    w = radius.numerical_radius(validate_positive(np.diag([2.0, 1.0])), NIL)
    assert w.value == pytest.approx(math.sqrt(2) / 2, abs=1e-12)
    assert radius.numerical_radius(eye2, np.zeros((2, 2))).value == 0


def test_numerical_radius_brute_force(rng):
    # dense angle scan of the same support function, independent of refinement
    for seed in range(5):
        sp, (T,) = generate(InstanceSpec(seed, 4, 3))
        B = np.asarray(linalg.as_cmatrix(sp.sqrtA @ T @ sp.pinv_sqrtA))
        th = np.linspace(0, np.pi, 20001)
        brute = max(np.max(np.abs(np.linalg.eigvalsh(0.5 * (np.exp(1j * t) * B + np.exp(-1j * t) * B.conj().T)))) for t in th)
        w = radius.numerical_radius(sp, T).value
        assert brute <= w + 1e-12
        assert w - brute <= 1e-6 * max(1, w)


def test_sup_alpha_beta_examples(eye2):
    sp, (H,) = generate(InstanceSpec(7, 4, 2, ("a_selfadjoint",)))
    assert radius.sup_alpha_beta(sp, H) == pytest.approx(radius.op_seminorm(sp, H).value, rel=1e-9)
    assert radius.sup_alpha_beta(eye2, NIL) == pytest.approx(0.5, abs=1e-12)
    assert radius.sup_alpha_beta(eye2, np.zeros((2, 2))) == 0


def test_crawford_examples(eye2):
    assert radius.crawford(eye2, np.eye(2)).value == pytest.approx(1)
    assert radius.crawford(eye2, NIL).value == 0
    assert radius.crawford(eye2, np.diag([1.0, 2.0])).value == pytest.approx(1, abs=1e-12)
    assert radius.crawford(eye2, np.diag([1.0, -1.0])).value == 0


def test_range_boundary_examples(eye2):
    rb = radius.numerical_range_boundary(eye2, np.eye(2), 16)
    np.testing.assert_allclose(rb.support_points, 1)
    rb = radius.numerical_range_boundary(eye2, NIL, 360)
    np.testing.assert_allclose(np.abs(rb.support_points), 0.5, atol=1e-8)
    rb = radius.numerical_range_boundary(eye2, np.diag([1, 1j]), 64)
    pts = rb.support_points
    assert np.min(np.abs(pts - 1)) <= 1e-12 and np.min(np.abs(pts - 1j)) <= 1e-12
    with pytest.raises(ValueError):
        radius.numerical_range_boundary(eye2, NIL, 4)


def test_range_boundary_witnesses_and_radius():
    sp, (T,) = generate(InstanceSpec(11, 5, 3))
    rb = radius.numerical_range_boundary(sp, T, 360)
    AT = sp.A @ T
    for x, z in zip(rb.witnesses[::37], rb.support_points[::37]):
        assert np.vdot(x, sp.A @ x).real == pytest.approx(1, abs=1e-9)
        assert np.vdot(x, AT @ x) == pytest.approx(z, abs=1e-9 * max(1, abs(z)))
    w = radius.numerical_radius(sp, T).value
    assert abs(np.max(np.abs(rb.support_points)) - w) <= rb.error_bound + 1e-8


def test_oracle_examples(eye2):
    lb, slb, cub = radius.sampling_oracle(eye2, np.eye(2), seed=0, samples=200)
    assert lb == pytest.approx(1) and slb == pytest.approx(1) and cub == pytest.approx(1)
    lb, _, _ = radius.sampling_oracle(eye2, NIL, seed=0, samples=20000)
    assert 0.499 <= lb <= 0.5 + 1e-12


def test_oracle_is_one_sided():
    for seed in range(6):
        sp, (T,) = generate(InstanceSpec(seed, 4, 1 + seed % 4))
        lb, slb, cub = radius.sampling_oracle(sp, T, seed=seed, samples=500, ascent_iters=10)
        assert lb <= radius.numerical_radius(sp, T).value + 1e-8
        assert slb <= radius.op_seminorm(sp, T).value + 1e-8
        assert cub >= radius.crawford(sp, T).value - 1e-8


def test_oracle_rejects_unbounded(singular2):
    with pytest.raises(Unbounded):
        radius.sampling_oracle(singular2, SWAP)
