"""Exception hierarchy shared by all cosetpp modules."""


class CosetPPError(Exception):
    """Base class for all cosetpp errors."""


class NotPrime(CosetPPError):
    pass


class ReducibleModulus(CosetPPError):
    pass


class NotPrimitive(CosetPPError):
    pass


class CapExceeded(CosetPPError):
    pass


class NotDivisor(CosetPPError):
    pass


class NotInMu(CosetPPError):
    pass


class ZeroPoly(CosetPPError):
    pass


class BothZero(CosetPPError):
    pass


class DegreeMismatch(CosetPPError):
    pass


class InvalidTau(CosetPPError):
    pass


class EmptyFamily(CosetPPError):
    pass


class RangeError(CosetPPError):
    pass


class BadR(CosetPPError):
    pass


class EvenQ(CosetPPError):
    pass


class BadResidue(CosetPPError):
    pass


class ShapeMismatch(CosetPPError):
    pass


class UndefinedValue(CosetPPError):
    """A map that should stay inside the unit group hit a zero of h."""
