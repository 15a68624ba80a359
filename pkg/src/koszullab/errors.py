"""Exception hierarchy.

Two families matter to callers: ``InputError`` (bad arguments, exit code 2 in
the CLI) and ``MathAssertionError`` (a theorem-backed check failed, which
means an engine bug; exit code 1).
"""

from __future__ import annotations


class KoszulLabError(Exception):
    pass


class InputError(KoszulLabError):
    pass


class MathAssertionError(KoszulLabError):
    """A check that is guaranteed by a theorem did not hold."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


class InternalError(KoszulLabError):
    pass


# field
class DivisionByZero(InputError, ZeroDivisionError):
    pass


class FieldMismatch(InputError):
    pass


# poly / groebner
class RingMismatch(InputError):
    pass


class ExponentOverflow(InputError, OverflowError):
    pass


class NotHomogeneous(InputError):
    pass


class AmbientMismatch(InputError):
    pass


class ZeroDivisorArgument(InputError):
    """Raised when a colon is requested by the zero element."""


class InternalBoundExceeded(InternalError):
    pass


# resolution
class NotFiniteLength(InputError):
    pass


class EmptyModule(InputError):
    pass


class UnsupportedQuotient(InputError):
    pass


# tor
class NotAComplex(InputError):
    pass


class DifferentQuotients(InputError):
    pass


# linprod
class EmptyIndexSet(InputError):
    pass


class InvalidParameter(InputError):
    pass


class NotContained(InputError):
    pass


class EqualityFailed(MathAssertionError):
    pass


class CheckFailed(MathAssertionError):
    pass


class BoundViolated(MathAssertionError):
    pass


# approx
class NotASandwich(InputError):
    pass


class NotSurjective(InputError):
    pass


class NotWellDefined(InputError):
    pass


class NoFilterRegularFound(InternalError):
    pass


class FilterRegularityViolated(InputError):
    pass


# dsl
class ScriptSyntaxError(InputError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line = line
        self.col = col


class UndeclaredName(ScriptSyntaxError):
    pass


class ScriptNotHomogeneous(ScriptSyntaxError, NotHomogeneous):
    pass
