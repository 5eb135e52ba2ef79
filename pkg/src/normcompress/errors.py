class PreconditionError(ValueError):
    """Input violates a documented precondition (CLI exit code 2)."""


class GenericityError(PreconditionError):
    """Three eigenvalues are collinear within tolerance."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class BudgetExceeded(PreconditionError):
    """A subset enumeration would exceed the combinatorial budget."""


class BoundaryAmbiguous(PreconditionError):
    """A point sits inside the tolerance band of a boundary feature."""


class VerificationError(RuntimeError):
    """A constructed object failed its numerical self-check (CLI exit code 3)."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
