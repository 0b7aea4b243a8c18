"""Reproducible random instances with prescribed operator classes.

Every operator is built in the eigenbasis of ``A = Q diag(D, 0) Q*`` as a
block matrix ``[[T11, T12], [T21, T22]]`` (blocks of size ``r`` and
``n - r``) and rotated back with ``Q``.  The recipes follow from the range
condition and the class definitions:

* A-bounded / admits an A-adjoint  ⇔  ``T12 = 0``
* A-selfadjoint  ⇔  ``T12 = 0`` and ``T11 = D^{-1} H`` with ``H`` Hermitian
* A-positive     ⇔  as above with ``H ⪰ 0``
* A-normal       ⇔  ``T12 = T21 = 0`` and ``D^{1/2} T11 D^{-1/2}`` normal
* A-isometry     ⇔  ``T12 = 0`` and ``D^{1/2} T11 D^{-1/2}`` unitary
  (in finite dimension every A-isometry is A-unitary)

Each recipe is re-verified with :func:`semihilbert.adjoint.classify`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import adjoint, linalg
from ..errors import ClassViolation, InfeasibleSpec
from ..space import SemiInnerSpace, validate_positive

SINGLE_CLASSES = (
    "generic",
    "a_selfadjoint",
    "a_positive",
    "a_normal",
    "a_isometry",
    "a_unitary",
    "nilpotent",
    "square_zero",
    "block_diag",
)
PAIR_CLASSES = (
    "commuting_pair",
    "double_commuting_pair",
    "normal_commuting_pair",
    "unitary_commuting_pair",
)
CLASSES = SINGLE_CLASSES + PAIR_CLASSES
MAX_DIM = 32
VERIFY_TOL = 1e-9


@dataclass(frozen=True)
class InstanceSpec:
    seed: int
    dim: int
    rank: int
    classes: tuple[str, ...] = field(default=("generic",))

    def as_dict(self) -> dict:
        return {"seed": self.seed, "dim": self.dim, "rank": self.rank, "classes": list(self.classes)}


def _cgauss(rng: np.random.Generator, *shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    q, r = np.linalg.qr(_cgauss(rng, n, n))
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


class _Frame:
    """Eigen-frame of a generated kernel; assembles operators from blocks."""

    def __init__(self, rng: np.random.Generator, n: int, r: int):
        self.rng, self.n, self.r, self.k = rng, n, r, n - r
        self.Q = haar_unitary(rng, n)
        self.d = np.exp(rng.uniform(np.log(1e-2), np.log(1e2), size=r))
        self.sq = np.sqrt(self.d)

    def kernel(self) -> np.ndarray:
        w = np.concatenate([self.d, np.zeros(self.k)])
        return linalg.herm((self.Q * w) @ self.Q.conj().T)

    def from_reduced(self, B: np.ndarray) -> np.ndarray:
        """``T11`` whose reduced matrix ``D^{1/2} T11 D^{-1/2}`` is ``B``."""
        return (B / self.sq[:, None]) * self.sq[None, :]

    def assemble(self, t11, t21=None, t22=None) -> np.ndarray:
        r, k = self.r, self.k
        if t21 is None:
            t21 = _cgauss(self.rng, k, r)
        if t22 is None:
            t22 = _cgauss(self.rng, k, k)
        full = np.zeros((self.n, self.n), dtype=np.complex128)
        full[:r, :r] = t11
        full[r:, :r] = t21
        full[r:, r:] = t22
        return self.Q @ full @ self.Q.conj().T

    def normal(self, unit: bool = False, multiplicity: bool = False):
        r = self.r
        lam = _cgauss(self.rng, r)
        if multiplicity and r > 1:
            split = int(self.rng.integers(1, r))
            lam = np.concatenate([np.full(split, lam[0]), np.full(r - split, lam[1])])
        if unit:
            lam = lam / np.abs(lam)
        W = haar_unitary(self.rng, r)
        return W, lam


def _poly(rng: np.random.Generator, T: np.ndarray) -> np.ndarray:
    """``c0 I + c1 T + c2 T^2 + c3 T^3`` with random complex coefficients."""
    deg = int(rng.integers(1, 4))
    c = _cgauss(rng, deg + 1)
    scale = max(1.0, linalg.norm2(T))
    out = c[0] * np.eye(T.shape[0], dtype=np.complex128)
    p = np.eye(T.shape[0], dtype=np.complex128)
    for j in range(1, deg + 1):
        p = p @ T
        out = out + c[j] * p / scale**j
    return out


def _single(fr: _Frame, cls: str) -> np.ndarray:
    rng, r, k = fr.rng, fr.r, fr.k
    if cls == "generic":
        return fr.assemble(_cgauss(rng, r, r))
    if cls in ("a_selfadjoint", "a_positive"):
        g = _cgauss(rng, r, r)
        h = g @ g.conj().T if cls == "a_positive" else linalg.herm(g)
        return fr.assemble(h / fr.d[:, None])
    if cls == "a_normal":
        W, lam = fr.normal()
        return fr.assemble(fr.from_reduced((W * lam) @ W.conj().T), np.zeros((k, r)))
    if cls in ("a_isometry", "a_unitary"):
        return fr.assemble(fr.from_reduced(haar_unitary(rng, r)))
    if cls == "nilpotent":
        W = haar_unitary(rng, r)
        L = np.tril(_cgauss(rng, r, r), -1)
        return fr.assemble(fr.from_reduced(W @ L @ W.conj().T), None, np.tril(_cgauss(rng, k, k), -1))
    if cls == "square_zero":
        h = r // 2
        M = np.zeros((r, r), dtype=np.complex128)
        M[:h, h:] = _cgauss(rng, h, r - h)
        W = haar_unitary(rng, r)
        return fr.assemble(fr.from_reduced(W @ M @ W.conj().T))
    if cls == "block_diag":
        return fr.assemble(_cgauss(rng, r, r), np.zeros((k, r)))
    raise InfeasibleSpec(f"unknown operator class {cls!r}")


def _pair(fr: _Frame, cls: str) -> tuple[np.ndarray, np.ndarray]:
    rng, r, k = fr.rng, fr.r, fr.k
    if cls == "commuting_pair":
        T = _single(fr, "generic")
        return T, _poly(rng, T)
    if cls == "double_commuting_pair":
        T = _single(fr, "a_normal")
        return T, _poly(rng, T)
    # degenerate spectrum: S is block diagonal in the eigenbasis of T, so S
    # commutes with T and T* without being a function of T
    W, lam = fr.normal(unit=cls == "unitary_commuting_pair", multiplicity=True)
    split = int(np.count_nonzero(lam == lam[0]))
    M = np.zeros((r, r), dtype=np.complex128)
    M[:split, :split] = _cgauss(rng, split, split)
    M[split:, split:] = _cgauss(rng, r - split, r - split)
    bt = (W * lam) @ W.conj().T
    bs = W @ M @ W.conj().T
    zero = np.zeros((k, r))
    t22 = _cgauss(rng, k, k)
    u22 = lam[0] * np.eye(k)
    T = fr.assemble(fr.from_reduced(bt), zero, u22)
    S = fr.assemble(fr.from_reduced(bs), zero, t22)
    return T, S


def _verify(space: SemiInnerSpace, cls: str, ops: list[np.ndarray]) -> None:
    tol = VERIFY_TOL
    if cls in PAIR_CLASSES:
        T, S = ops
        flags = adjoint.classify(space, T, tol)
        need_normal = cls != "commuting_pair"
        ok = flags.member_BA and adjoint.in_b_a(space, S)
        ok = ok and adjoint._rel(T @ S - S @ T, T @ S, S @ T) <= tol
        if need_normal:
            ts = adjoint.sharp_unchecked(space, T)
            ok = ok and flags.a_normal and adjoint._rel(ts @ S - S @ ts, ts @ S, S @ ts) <= tol
        if cls == "unitary_commuting_pair":
            ok = ok and flags.a_unitary
        if not ok:
            raise ClassViolation(f"generated pair fails {cls}")
        return
    (T,) = ops
    flags = adjoint.classify(space, T, tol)
    if cls.startswith("a_"):
        ok = getattr(flags, cls)
    elif cls == "nilpotent":
        ok = flags.member_BA and linalg.norm2(np.linalg.matrix_power(T, space.n)) <= 1e-8 * max(
            1.0, linalg.norm2(T)
        ) ** space.n
    elif cls == "square_zero":
        ok = flags.member_BA and linalg.norm2(space.A @ T @ T) <= tol * max(1.0, linalg.norm2(space.A @ T) * linalg.norm2(T))
    elif cls == "block_diag":
        P = space.projR
        ok = flags.member_BA and linalg.norm2(T @ P - P @ T @ P) <= tol * max(1.0, linalg.norm2(T))
    else:
        ok = flags.member_BA
    if not ok:
        raise ClassViolation(f"generated operator fails {cls}: {flags.residuals}")


def generate(spec: InstanceSpec) -> tuple[SemiInnerSpace, list[np.ndarray]]:
    """Build the kernel and operators described by ``spec``.

    Pair classes contribute two consecutive operators to the returned list.
    A class may be combined with ``generic`` using ``+``; any other
    combination raises :class:`InfeasibleSpec`.
    """
    n, r = spec.dim, spec.rank
    if not (1 <= r <= n <= MAX_DIM):
        raise InfeasibleSpec(f"need 1 <= rank <= dim <= {MAX_DIM}, got rank={r} dim={n}")
    resolved = []
    for cls in spec.classes:
        parts = [p for p in cls.split("+") if p and p != "generic"]
        if len(parts) > 1:
            raise InfeasibleSpec(f"operator classes {parts} cannot be combined")
        c = parts[0] if parts else "generic"
        if c not in CLASSES:
            raise InfeasibleSpec(f"unknown operator class {c!r}")
        resolved.append(c)
    rng = np.random.default_rng([spec.seed & (2**64 - 1), n, r])
    fr = _Frame(rng, n, r)
    space = validate_positive(fr.kernel())
    if space.r != r:  # pragma: no cover - d >= 1e-2 keeps the rank exact
        raise InfeasibleSpec("numerical rank of the generated kernel differs from the requested rank")
    ops: list[np.ndarray] = []
    for c in resolved:
        new = list(_pair(fr, c)) if c in PAIR_CLASSES else [_single(fr, c)]
        _verify(space, c, new)
        ops.extend(new)
    return space, ops
