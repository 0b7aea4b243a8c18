import math

import numpy as np
import pytest

from semihilbert import adjoint, blocks, linalg
from semihilbert.errors import NotAdmissible, NotInvariant
from semihilbert.space import validate_positive
from semihilbert.suite.generators import InstanceSpec, generate

from conftest import NIL, crandn


def test_block_space_cached(eye2):
    bs = blocks.block_space(eye2)
    assert bs is blocks.block_space(eye2)
    assert bs.dbl.r == 4
    np.testing.assert_array_equal(bs.dbl.A[:2, :2], eye2.A)


def test_block_sharp_examples(eye2, rng):
    I = np.eye(2)
    big = blocks.block2(eye2, I, I, I, I)
    np.testing.assert_allclose(adjoint.sharp(blocks.block_space(eye2).dbl, big), big, atol=1e-14)
    Z = np.zeros((2, 2))
    T = crandn(rng, 2, 2)
    s = adjoint.sharp(blocks.block_space(eye2).dbl, blocks.block2(eye2, Z, T, Z, Z))
    np.testing.assert_allclose(s[2:, :2], T.conj().T, atol=1e-13)
    sp = validate_positive(np.diag([2.0, 1.0]))
    assert blocks.block_sharp_residual(sp, *[crandn(rng, 2, 2) for _ in range(4)]) <= 1e-9
    with pytest.raises(NotAdmissible):
        blocks.block2(validate_positive(np.diag([1.0, 0.0])), NIL, Z, Z, Z)


def test_off_diag_radius_examples(eye2):
    assert blocks.off_diag_radius(eye2, NIL, NIL) == pytest.approx(0.5, abs=1e-12)
    assert blocks.off_diag_radius(eye2, np.eye(2), np.zeros((2, 2))) == pytest.approx(0.5, abs=1e-12)
    assert blocks.off_diag_radius(eye2, np.eye(2), np.eye(2)) == pytest.approx(1, abs=1e-12)


def test_off_diag_radius_paths_and_swap():
    sp, (T, S) = generate(InstanceSpec(3, 4, 2, ("generic", "generic")))
    w = blocks.off_diag_radius(sp, T, S)
    assert w == pytest.approx(blocks.off_diag_radius_direct(sp, T, S).value, rel=1e-9)
    assert w == pytest.approx(blocks.off_diag_radius(sp, S, T), rel=1e-9)


def test_psi_phi_examples(eye2):
    assert blocks.psi(eye2, np.eye(2), np.eye(2)) == pytest.approx(1)
    assert blocks.phi(eye2, np.eye(2), np.eye(2)) == pytest.approx(1)
    assert blocks.psi(eye2, NIL, NIL) == pytest.approx(0.5)
    assert blocks.phi(eye2, NIL, NIL) == pytest.approx(0.5)
    sp, (T,) = generate(InstanceSpec(1, 3, 2))
    assert blocks.psi(sp, T, np.zeros((3, 3))) == pytest.approx(0.5 * linalg.norm2(sp.sqrtA @ T @ sp.pinv_sqrtA))


def test_upper_triangular_norm():
    for t in (0.0, 1.0, 2.0):
        assert blocks.upper_triangular_norm(t) == pytest.approx(np.linalg.norm([[1, t], [0, 1]], 2), rel=1e-14)


def test_involution_examples(eye2):
    m = blocks.involution_metrics(eye2, np.zeros((2, 2)))
    assert (m.omega_bb, m.norm_bb) == pytest.approx((1, 1))
    assert m.im_norm == pytest.approx(0, abs=1e-12)
    m = blocks.involution_metrics(eye2, [[0, 2], [0, 0]])
    assert m.omega_bb == pytest.approx(math.sqrt(2))
    assert m.norm_bb == pytest.approx(math.sqrt(2) + 1)
    assert m.identity_rhs == pytest.approx(math.sqrt(2))
    m = blocks.involution_metrics(validate_positive(np.diag([1.0, 0.0])), np.diag([3.0, 0.0]))
    assert m.omega_bb == pytest.approx(0.5 * math.sqrt(13))
    assert m.max_rel_error() <= 1e-7


def test_involution_requires_invariance():
    sp = validate_positive(np.diag([1.0, 0.0]))
    with pytest.raises(NotInvariant):
        blocks.involution_metrics(sp, [[1, 0], [1, 0]])
    with pytest.raises(NotAdmissible):
        blocks.involution_metrics(sp, NIL)
