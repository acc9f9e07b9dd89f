"""Exception hierarchy shared by every module of the package."""


class SupermodularError(Exception):
    """Base class for all package errors."""


# algebra
class ZeroPolynomial(SupermodularError, ValueError):
    pass


class NoRootInInterval(SupermodularError, ValueError):
    pass


class MultipleRootsInInterval(SupermodularError, ValueError):
    pass


class DivisionByZero(SupermodularError, ZeroDivisionError):
    pass


class NotReal(SupermodularError, ValueError):
    """A cyclotomic element was converted to a real algebraic number but is not real."""


# fusion rings / premodular data
class ShapeMismatch(SupermodularError, ValueError):
    pass


class NotValidated(SupermodularError, ValueError):
    pass


class NotSuperModular(SupermodularError, ValueError):
    pass


class MissingTwists(SupermodularError, ValueError):
    pass


# quotient
class BlockMismatch(SupermodularError, ValueError):
    pass


class FixedPointFermion(SupermodularError, ValueError):
    pass


class NotSelfDual(SupermodularError, ValueError):
    pass


class IndicatorNotPlusMinusOne(SupermodularError, ValueError):
    pass


# catalog / classify / spin
class BadParameters(SupermodularError, ValueError):
    pass


class BoundTooSmall(SupermodularError, ValueError):
    pass


class UnsupportedRank(SupermodularError, ValueError):
    pass


class NotSpinModular(SupermodularError, ValueError):
    def __init__(self, message: str, violations=None):
        super().__init__(message)
        self.violations = list(violations or [])


class OutOfRange(SupermodularError, ValueError):
    def __init__(self, message: str, note: str | None = None):
        super().__init__(message if note is None else f"{message}\n{note}")
        self.note = note


# io
class ParseError(SupermodularError, ValueError):
    pass


class SchemaVersionMismatch(ParseError):
    pass
