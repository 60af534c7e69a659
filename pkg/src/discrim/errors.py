"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operand dimensions do not fit together."""


class ContractError(ValueError):
    """An input violates a documented precondition (e.g. not Hermitian)."""


class CapacityError(ValueError):
    """A size guard on an exhaustive search or SDP was exceeded."""


class ConvergenceError(RuntimeError):
    """The SDP solver ran out of iterations before closing the duality gap.

    The best certified bounds found so far are kept on the exception so the
    caller can still report them.
    """

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class ParseError(ValueError):
    """A channel file is syntactically malformed."""


class ValidationError(ValueError):
    """A parsed channel violates its invariants (completeness, stochasticity)."""
