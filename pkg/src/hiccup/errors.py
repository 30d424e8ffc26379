"""Exception hierarchy shared by the hiccup modules."""


class HiccupError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(HiccupError, ValueError):
    """Invalid ``(j, x, y, z)`` parameters or a violated precondition."""


class EmptyRequestError(HiccupError, ValueError):
    pass


class HorizonError(HiccupError, ValueError):
    """A request reaches past the terms that were generated."""


class NotHiccupError(HiccupError, ValueError):
    pass


class AlphabetError(HiccupError, ValueError):
    pass


class FixedPointError(HiccupError, ValueError):
    """No (unique) fixed point exists for the requested seed."""


class ProlongabilityError(FixedPointError):
    pass


class AmbiguityError(FixedPointError):
    pass


class ConjugationError(HiccupError, ValueError):
    pass


class DegeneracyError(ParameterError):
    pass


class ReduceFirstError(ParameterError):
    pass


class NotSturmianError(HiccupError, ValueError):
    pass


class NoFixedPointError(HiccupError, ValueError):
    pass


class NotApplicableError(HiccupError, ValueError):
    """A characterization does not apply to the given parameters."""


class InvalidRepresentationError(HiccupError, ValueError):
    pass


class BoundViolationError(HiccupError, AssertionError):
    pass


class PrecisionError(HiccupError, ArithmeticError):
    """Requested precision cannot be certified (increase working precision)."""


class DivergenceError(HiccupError, ArithmeticError):
    """A remainder left the positive reals."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class BFileFormatError(HiccupError, ValueError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
