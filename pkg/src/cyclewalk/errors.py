"""Exception types raised by cyclewalk."""


class CycleWalkError(Exception):
    """Base class for all library errors."""


class InvalidSpecError(CycleWalkError, ValueError):
    """Cycle size out of range."""


class InvalidProfileError(CycleWalkError, ValueError):
    """Coin profile does not match the cycle or carries bad parameters."""


class InvalidArgumentError(CycleWalkError, ValueError):
    pass


class DimensionMismatchError(CycleWalkError, ValueError):
    pass


class GapClosedError(CycleWalkError, ArithmeticError):
    """Quantity undefined because the quasi-energy gap is closed."""


class NoBoundaryError(CycleWalkError, ValueError):
    """The two coin angles do not sit in distinct topological phases.

    ``omega_boundary`` and ``omega_bulk`` carry the winding values that
    failed the gate (``None`` where the winding was gap-closed).
    """

    def __init__(self, message, omega_boundary=None, omega_bulk=None):
        super().__init__(message)
        self.omega_boundary = omega_boundary
        self.omega_bulk = omega_bulk


class NotFoundError(CycleWalkError, LookupError):
    pass


class NormalizationError(CycleWalkError, ValueError):
    """State norm deviates from one beyond tolerance."""
