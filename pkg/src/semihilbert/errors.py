"""Exception hierarchy shared by every module of the package."""


class SemiHilbertError(Exception):
    """Base class for all errors raised by :mod:`semihilbert`."""


class NonFinite(SemiHilbertError, ValueError):
    """A matrix or vector contains NaN or Inf entries."""


class NotHermitian(SemiHilbertError, ValueError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class NotSquare(SemiHilbertError, ValueError):
    """A square matrix was required."""


class DimensionMismatch(SemiHilbertError, ValueError):
    """Operand shapes are incompatible with the ambient space."""


class NoConvergence(SemiHilbertError, ArithmeticError):
    """An iterative eigensolver exhausted its budget."""


class NotPositive(SemiHilbertError, ValueError):
    """The kernel has an eigenvalue below ``-psd_tol``."""


class ZeroKernel(SemiHilbertError, ValueError):
    """The kernel is numerically zero, so every seminorm degenerates."""


class NotAdmissible(SemiHilbertError, ValueError):
    """The operator has no A-adjoint (Douglas range condition fails)."""


class Unbounded(SemiHilbertError, ValueError):
    """The operator maps ``N(A)`` outside ``N(A)``; ``||T||_A`` is infinite.

    In this regime the A-numerical range is the whole complex plane.
    """


# historical name used by the tilde reduction
NotABounded = Unbounded


class NotInvariant(SemiHilbertError, ValueError):
    """``N(A)^perp`` is not an invariant subspace of the operator."""


class ClassViolation(SemiHilbertError, ValueError):
    """A generated or supplied operator fails its advertised class predicate."""


class InfeasibleSpec(SemiHilbertError, ValueError):
    """An instance specification cannot be realised."""


class ConsistencyError(SemiHilbertError, RuntimeError):
    """Two independent numerical tests of the same fact disagree."""
