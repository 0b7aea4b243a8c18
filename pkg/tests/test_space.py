import numpy as np
import pytest

from semihilbert.errors import DimensionMismatch, NotHermitian, NotPositive, ZeroKernel
from semihilbert.space import sample_a_unit, seminorm_vec, sip, validate_positive

from conftest import crandn, random_kernel


def test_validate_identity_and_singular():
    s = validate_positive(np.eye(3))
    assert (s.n, s.r) == (3, 3)
    s = validate_positive(np.diag([0.0, 1.0]))
    assert s.r == 1
    np.testing.assert_allclose(np.abs(s.null_basis[:, 0]), [1, 0])


def test_validate_clamps_tiny_negative():
    s = validate_positive([[1, -1e-14], [-1e-14, 1]])
    assert s.r == 2
    s = validate_positive(np.diag([1.0, -1e-13]))
    assert s.clamped == 1 and s.r == 1
    assert np.all(np.linalg.eigvalsh(s.A) >= 0)


def test_validate_errors():
    with pytest.raises(NotPositive):
        validate_positive(np.diag([1.0, -1e-3]))
    with pytest.raises(ZeroKernel):
        validate_positive(np.zeros((2, 2)))
    with pytest.raises(NotHermitian):
        validate_positive([[1, 1], [0, 1]])


def test_cached_square_roots(rng):
    s = validate_positive(random_kernel(rng, 5, 3))
    assert np.linalg.norm(s.sqrtA @ s.sqrtA - s.A, 2) <= 1e-9 * s.normA
    np.testing.assert_allclose(s.projR @ s.projR, s.projR, atol=1e-12)
    assert round(np.trace(s.projR).real) == 3


def test_sip_examples(eye2, singular2):
    x, y = np.array([1, 2j]), np.array([3, 1 - 1j])
    assert sip(eye2, x, y) == pytest.approx(np.vdot(y, x))
    assert sip(singular2, [1, 0], [5, 7j]) == 0
    assert sip(validate_positive(np.diag([2.0, 1.0])), [1, 1], [1, 1]) == pytest.approx(3)
    with pytest.raises(DimensionMismatch):
        sip(eye2, [1, 2, 3], [1, 2])


def test_seminorm_examples(eye2, singular2):
    assert seminorm_vec(singular2, [1, 0]) == 0
    assert seminorm_vec(eye2, [3, 4]) == pytest.approx(5)
    assert seminorm_vec(validate_positive(np.diag([4.0, 1.0])), [1, 0]) == pytest.approx(2)


def test_sip_hermitian_symmetry_cauchy_schwarz_and_null_shift(rng):
    s = validate_positive(random_kernel(rng, 6, 4))
    for _ in range(20):
        x, y = crandn(rng, 6), crandn(rng, 6)
        assert abs(sip(s, x, y) - np.conj(sip(s, y, x))) <= 1e-12 * max(1, abs(sip(s, x, y)))
        assert abs(sip(s, x, y)) <= seminorm_vec(s, x) * seminorm_vec(s, y) + 1e-10
        z = s.null_basis @ crandn(rng, 2)
        assert abs(sip(s, x + z, y) - sip(s, x, y)) <= 1e-10 * s.normA * np.linalg.norm(y) * max(1, np.linalg.norm(z))


def test_sample_a_unit(rng, singular2):
    s = validate_positive(random_kernel(rng, 5, 2))
    X = sample_a_unit(s, 3, 50, include_null=True)
    assert X.shape == (50, 5)
    assert max(abs(seminorm_vec(s, x) - 1) for x in X) <= 1e-12
    X = sample_a_unit(singular2, 1, 10)
    np.testing.assert_allclose(np.abs(X[:, 1]), 1, atol=1e-12)
    assert sample_a_unit(s, 0, 0).shape == (0, 5)
    np.testing.assert_array_equal(sample_a_unit(s, 9, 4), sample_a_unit(s, 9, 4))
