"""Exception hierarchy shared by every layer of the package."""


class WalkError(Exception):
    """Base class for all errors raised by nuwalk."""


class InvalidConfig(WalkError, ValueError):
    """A configuration value is outside the range its consumer accepts."""


class DimensionMismatch(WalkError, ValueError):
    pass


class LatticeMismatch(WalkError, ValueError):
    pass


class CycleUnsupported(WalkError, ValueError):
    """Raised for quantities that are only meaningful on the line."""


class EmptySeries(WalkError, ValueError):
    pass


class InvalidEpsilon(WalkError, ValueError):
    pass


class InvalidMode(WalkError, ValueError):
    pass


class DegenerateInput(WalkError, ValueError):
    pass


class NumericalError(WalkError, ArithmeticError):
    """Base for failures that indicate corrupted numerical state."""


class NotHermitian(NumericalError):
    pass


class ConvergenceFailure(NumericalError):
    pass


class NumericalCorruption(NumericalError):
    """Drift in trace or Hermiticity exceeded the correction budget."""


class BoundaryOverflow(NumericalError):
    """Support on a truncated line would be shifted off the lattice."""
