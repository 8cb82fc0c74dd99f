"""Exception and warning types raised by idemlab."""


class IdemlabError(Exception):
    """Base class for all idemlab errors."""


class NonConvergence(IdemlabError):
    """An iterative kernel exceeded its iteration cap."""


class Singular(IdemlabError):
    """A linear system is numerically singular."""


class DimensionMismatch(IdemlabError, ValueError):
    """Operands live in spaces of different dimension."""


class NotComplementary(IdemlabError):
    """Two subspaces do not form an algebraic direct sum of the ambient space."""


class NotIdempotent(IdemlabError):
    """Matrix failed the idempotency test.

    The measured ``residual`` = ||T^2 - T|| is kept on the exception.
    """

    def __init__(self, residual, tol):
        super().__init__(f"||T^2 - T|| = {residual:.3e} exceeds tolerance {tol:.3e}")
        self.residual = residual
        self.tol = tol


class BadParameters(IdemlabError, ValueError):
    """Invalid arguments to a generator or demo."""


class DegenerateGeometry(IdemlabError):
    """The restricted projection P_{N(T*)}|_{N(T)} is numerically singular."""


class PreconditionViolated(IdemlabError):
    """An operation's documented precondition does not hold."""


class ContourTooClose(IdemlabError):
    """An eigenvalue sits too close to the integration contour."""


class QuadratureNotConverged(IdemlabError):
    """Doubling the quadrature nodes changed the result beyond tolerance."""


class NoSpectralGap(IdemlabError):
    """No usable radial gap for placing a separating circle."""


class SpectrumViolation(IdemlabError):
    """A spectrum that should lie in {0, 1} does not."""


class ExtractionFailed(IdemlabError):
    """No certified non-trivial invariant subspace could be produced."""


class NotNearIdempotent(IdemlabError):
    """Matrix is too far from idempotent for the cluster classifier."""


class NotEpsCommuting(IdemlabError):
    """Commutator norm exceeds the requested bound."""


class UnknownSuite(IdemlabError, KeyError):
    """Requested trial suite does not exist."""


class ParseError(IdemlabError, ValueError):
    """Malformed matrix file."""


class IllConditionedWarning(UserWarning):
    """Result is valid but its conditioning makes the 1e-8 bounds unreliable."""
