"""Exception hierarchy shared by every module in the package."""


class SignalLassoError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(SignalLassoError, ValueError):
    pass


class NonFiniteEntry(SignalLassoError, ValueError):
    pass


class SingularSystem(SignalLassoError, ArithmeticError):
    pass


class EmptyGrid(SignalLassoError, ValueError):
    pass


class NonBinaryTruth(SignalLassoError, ValueError):
    pass


class DegreeOutOfRange(SignalLassoError, ValueError):
    pass


class SpecInvalid(SignalLassoError, ValueError):
    pass


class ParseError(SignalLassoError, ValueError):
    pass


class AlphabetMismatch(SignalLassoError, ValueError):
    pass


class ShapeMismatch(SignalLassoError, ValueError):
    pass
