"""Exception types shared across the package."""


class BaskakovError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BaskakovError):
    """An argument fell outside the mathematical domain of an operation.

    Raised for negative x, out-of-range degrees, coefficient pairs that
    break the normalization constraint, and the like.  Distinct from
    ValueError so callers can catch package problems without swallowing
    genuine programming mistakes.
    """


class DivergentMomentError(DomainError):
    """The requested integral moment does not converge at this degree n."""


class UnsupportedSequenceError(DomainError):
    """A coefficient sequence cannot be resolved at the requested n."""


class UnboundedFunctionError(DomainError):
    """A non-polynomial unbounded function was given to an integral path."""


class MissingDerivativesError(DomainError):
    """An analytic derivative needed by an asymptotic formula is absent."""


class ZeroError(BaskakovError):
    """A log-log fit was asked for with nonpositive error values."""


class ParseError(BaskakovError):
    """A command-line expression did not match its grammar."""


class NonConvergenceError(BaskakovError):
    """A numerical routine exhausted its budget before meeting tolerance.

    Carries the best estimate and the error bound actually achieved so a
    caller that can live with reduced accuracy may still use them.
    """

    def __init__(self, message: str, estimate: float = float("nan"),
                 error_bound: float = float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
