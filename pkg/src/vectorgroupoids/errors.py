"""Exception hierarchy shared by all modules."""


class GroupoidError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(GroupoidError):
    def __init__(self, n):
        super().__init__(f"{n} is not prime")
        self.n = n


class DivisionByZero(GroupoidError):
    pass


class DomainMismatch(GroupoidError):
    pass


class DimensionMismatch(GroupoidError):
    pass


class PartialMap(GroupoidError):
    """A structure map is undefined on some carrier element."""


class MulDomainMismatch(GroupoidError):
    """mul is defined on a non-composable pair or missing on a composable one."""


class UnknownElement(GroupoidError):
    pass


class NotAUnit(GroupoidError):
    pass


class CarrierMismatch(GroupoidError):
    pass


class UnitSetMismatch(GroupoidError):
    pass


class NotInverse(GroupoidError):
    def __init__(self, p, q):
        super().__init__(f"{p}*{q} is not 1 in the field")
        self.p = p
        self.q = q


class NotASubspace(GroupoidError):
    pass


class BaseMismatch(GroupoidError):
    pass


class FieldMismatch(GroupoidError):
    pass


class SizeGuard(GroupoidError):
    """A construction would exceed the configured carrier-size cap."""


class ImageOutsidePullback(GroupoidError):
    pass


class VerificationFailed(GroupoidError):
    """An operation that requires a verified structure received a broken one.

    Carries the offending report so callers can inspect witnesses.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
