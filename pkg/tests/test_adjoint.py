import numpy as np
import pytest

from semihilbert import adjoint, linalg
from semihilbert.errors import DimensionMismatch, NotAdmissible
from semihilbert.space import validate_positive
from semihilbert.suite.generators import InstanceSpec, generate

from conftest import NIL, SWAP, crandn, random_kernel


def test_membership_examples(singular2, rng):
    assert not adjoint.in_b_a(singular2, SWAP)
    assert not adjoint.in_b_a_half(singular2, SWAP)
    pd = validate_positive(random_kernel(rng, 3, 3))
    assert adjoint.in_b_a(pd, crandn(rng, 3, 3))
    s10 = validate_positive(np.diag([1.0, 0.0]))
    assert not adjoint.in_b_a(s10, NIL)
    assert adjoint.in_b_a(s10, [[1, 0], [5, 3]])
    with pytest.raises(DimensionMismatch):
        adjoint.in_b_a(s10, np.eye(3))


def test_sharp_examples(eye2, rng):
    T = crandn(rng, 2, 2)
    np.testing.assert_allclose(adjoint.sharp(eye2, T), T.conj().T, atol=1e-14)
    np.testing.assert_allclose(adjoint.sharp(validate_positive(np.diag([2.0, 1.0])), NIL), [[0, 0], [2, 0]], atol=1e-14)
    a, b = 2 + 1j, -3j
    s10 = validate_positive(np.diag([1.0, 0.0]))
    np.testing.assert_allclose(adjoint.sharp(s10, np.diag([a, b])), np.diag([np.conj(a), 0]), atol=1e-14)
    with pytest.raises(NotAdmissible):
        adjoint.sharp(s10, NIL)


def test_sharp_postconditions(rng):
    s = validate_positive(random_kernel(rng, 5, 3))
    for seed in range(5):
        sp, (T,) = generate(InstanceSpec(seed, 5, 3))
        S = adjoint.sharp(sp, T)
        assert linalg.norm2(sp.A @ S - T.conj().T @ sp.A) <= 1e-9 * max(1, linalg.norm2(sp.A @ S))
        assert linalg.norm2(S - sp.projR @ S) <= 1e-9 * max(1, linalg.norm2(S))
    assert s.r == 3


def test_double_sharp_examples(eye2, rng):
    T = crandn(rng, 2, 2)
    np.testing.assert_allclose(adjoint.double_sharp(eye2, T), T, atol=1e-13)
    s10 = validate_positive(np.diag([1.0, 0.0]))
    np.testing.assert_allclose(adjoint.double_sharp(s10, [[1, 0], [5, 3]]), [[1, 0], [0, 0]], atol=1e-14)
    sp, (H,) = generate(InstanceSpec(4, 4, 2, ("a_selfadjoint",)))
    S = adjoint.sharp(sp, H)
    assert linalg.norm2(adjoint.double_sharp(sp, S) - S) <= 1e-9 * max(1, linalg.norm2(S))
    sp, (T,) = generate(InstanceSpec(5, 4, 2))
    P = sp.projR
    assert linalg.norm2(adjoint.double_sharp(sp, T) - P @ T @ P) <= 1e-9 * max(1, linalg.norm2(T))
    # sharp is an involution on compressed operators
    S = adjoint.sharp(sp, T)
    assert linalg.norm2(adjoint.sharp(sp, adjoint.double_sharp(sp, T)) - S) <= 1e-9 * max(1, linalg.norm2(S))


def test_re_im_parts(eye2):
    H = np.array([[1, 2 - 1j], [2 + 1j, 0]])
    np.testing.assert_allclose(adjoint.re_a(eye2, H), H)
    np.testing.assert_allclose(adjoint.im_a(eye2, H), 0, atol=1e-15)
    np.testing.assert_allclose(adjoint.re_a(eye2, NIL), 0.5 * SWAP)
    for seed in range(4):
        sp, (T,) = generate(InstanceSpec(seed, 4, 3))
        re, im = adjoint.re_a(sp, T), adjoint.im_a(sp, T)
        assert adjoint.classify(sp, re).a_selfadjoint
        assert adjoint.classify(sp, im).a_selfadjoint
        assert linalg.norm2(re + 1j * im - T) <= 1e-12 * max(1, linalg.norm2(T)) * 100
        assert linalg.norm2(linalg.herm(sp.A @ re) - sp.A @ re) <= 1e-9 * max(1, linalg.norm2(sp.A @ re))


def test_classify_examples(eye2, rng):
    q, _ = np.linalg.qr(crandn(rng, 2, 2))
    f = adjoint.classify(eye2, q)
    assert f.a_unitary and f.a_isometry and f.a_normal and not f.a_selfadjoint
    s10 = validate_positive(np.diag([1.0, 0.0]))
    f = adjoint.classify(s10, [[1, 0], [5, 3]])
    assert f.a_selfadjoint and f.a_positive
    assert adjoint.classify(s10, [[1, 0], [7, 2]]).a_isometry
    f = adjoint.classify(s10, NIL)
    assert not f.member_BA and not f.a_normal


def test_positive_operator_order(rng):
    for seed in range(4):
        sp, (T,) = generate(InstanceSpec(seed, 5, 3))
        S = adjoint.sharp(sp, T)
        assert np.linalg.eigvalsh(linalg.herm(sp.A @ S @ T))[0] >= -1e-9 * max(1, linalg.norm2(sp.A @ S @ T))


def test_class_implications(rng):
    for seed in range(30):
        A = random_kernel(rng, 4, 1 + seed % 4)
        sp = validate_positive(A)
        for T in (crandn(rng, 4, 4), sp.pinvA @ linalg.herm(crandn(rng, 4, 4)), np.eye(4)):
            f = adjoint.classify(sp, T)
            assert not f.a_unitary or f.a_isometry
            assert not f.a_isometry or f.member_BA
            assert not f.a_positive or f.a_selfadjoint
            assert not f.a_normal or f.member_BA
            assert not f.member_BA or f.member_BA_half
