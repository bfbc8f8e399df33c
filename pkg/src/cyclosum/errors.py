"""Exception types raised across the package."""


class CyclosumError(Exception):
    """Base class for all package errors."""


class NotPrime(CyclosumError, ValueError):
    pass


class BoundExceeded(CyclosumError, ValueError):
    pass


class NotAGenerator(CyclosumError, ValueError):
    pass


class LTooSmall(CyclosumError, ValueError):
    pass


class DoesNotDivide(CyclosumError, ValueError):
    pass


class OutOfRange(CyclosumError, ValueError):
    pass


class SpecTableMismatch(CyclosumError, ValueError):
    pass


class PartitionMismatch(CyclosumError, ValueError):
    pass


class BadOrder(CyclosumError, ValueError):
    pass


class OrderMismatch(CyclosumError, ValueError):
    pass


class NotCoprime(CyclosumError, ValueError):
    pass


class ResidualTooLarge(CyclosumError, ArithmeticError):
    pass


class TrivialCharacter(CyclosumError, ValueError):
    pass


class AgreementFailure(CyclosumError, AssertionError):
    """Two evaluation routes disagreed; ``n`` holds the first diverging index."""

    def __init__(self, message: str, n: int | None = None):
        super().__init__(message)
        self.n = n
