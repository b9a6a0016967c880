"""Exception hierarchy shared by every module of the package."""


class LiecohError(Exception):
    """Base class for all errors raised by liecoh."""


class AmbientMismatch(LiecohError, ValueError):
    pass


class IndexOutOfRange(LiecohError, IndexError):
    pass


class NonHomogeneous(LiecohError, ValueError):
    pass


class WrongGrade(LiecohError, ValueError):
    pass


class ParseError(LiecohError, ValueError):
    """Malformed algebra or form text. ``position`` is a 0-based offset."""

    def __init__(self, reason, text="", position=0):
        self.reason = reason
        self.text = text
        self.position = position
        super().__init__(f"{reason} at position {position}" + (f" in {text!r}" if text else ""))


class NonAscendingPair(ParseError):
    pass


class DimensionOutOfRange(LiecohError, ValueError):
    pass


class JacobiViolation(LiecohError, ValueError):
    pass


class NotSolvable(LiecohError, ValueError):
    pass


class NilpotentInput(LiecohError, ValueError):
    pass


class InternalVerificationFailure(LiecohError, AssertionError):
    pass


class NotChainMap(LiecohError, ValueError):
    pass


class NotNested(LiecohError, ValueError):
    pass


class OddDimension(LiecohError, ValueError):
    pass


class NoneExists(LiecohError, LookupError):
    pass


class NotSymplectic(LiecohError, ValueError):
    pass


class CalibrationFailure(LiecohError, AssertionError):
    pass


class CrossCheckMismatch(LiecohError, AssertionError):
    pass


class WellDefinednessFailure(LiecohError, AssertionError):
    pass


class CriteriaDisagreement(LiecohError, AssertionError):
    pass


class UnknownName(LiecohError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class ConstraintViolation(LiecohError, ValueError):
    pass


class ArityMismatch(LiecohError, ValueError):
    pass
