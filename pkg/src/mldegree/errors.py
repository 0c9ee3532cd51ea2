"""Exception types shared across the package."""


class ComputationError(ValueError):
    """Base class for errors raised by the computational pipelines."""


class ZeroPolynomialError(ComputationError):
    pass


class EliminationError(ComputationError):
    pass


class EmptyPolytopeError(ComputationError):
    pass


class DegeneratePolytopeError(ComputationError):
    pass


class NotVeryAffineError(ComputationError):
    """Raised when an arrangement complement is not very affine (non-essential)."""


class ArrangementError(ComputationError):
    pass


class NonGenericError(ComputationError):
    """Elimination kept degenerating; the input or exponents are not generic."""


class ParseError(ComputationError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
