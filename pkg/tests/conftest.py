import numpy as np
import pytest

from semihilbert.space import validate_positive

NIL = np.array([[0, 1], [0, 0]], dtype=np.complex128)
SWAP = np.array([[0, 1], [1, 0]], dtype=np.complex128)


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_kernel(rng, n, r):
    q, _ = np.linalg.qr(crandn(rng, n, n))
    d = np.concatenate([np.exp(rng.uniform(-2, 2, r)), np.zeros(n - r)])
    A = (q * d) @ q.conj().T
    return 0.5 * (A + A.conj().T)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def eye2():
    return validate_positive(np.eye(2))


@pytest.fixture
def singular2():
    return validate_positive(np.diag([0.0, 1.0]))
