"""
Exception hierarchy for the divlie toolkit.

Every error raised on purpose by the library derives from ``DivlieError`` and
from the builtin exception it refines, so callers can catch either.
"""


class DivlieError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(DivlieError, ValueError):
    """Operands live over a different number of variables."""


class IndexOutOfRangeError(DivlieError, IndexError):
    """A variable or direction index is outside ``1..n``."""


class NotHomogeneousError(DivlieError, ValueError):
    """A derivation straddles several weight classes."""


class ZeroInputError(DivlieError, ValueError):
    """A zero derivation or a constant polynomial was passed where rejected."""


class InvalidAutomorphismError(DivlieError, ValueError):
    """An elementary map is not invertible."""


class ExprSyntaxError(DivlieError, ValueError):
    """Syntax error in the text grammar, with a 1-based position."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        self.reason = message
        super().__init__(f"line {line}, col {column}: {message}")


class LoweringError(DivlieError, ValueError):
    """A parsed expression has no polynomial or derivation meaning."""


class UnknownTheoremError(DivlieError, KeyError):
    """Unsupported verification tag."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown theorem tag"


class SuiteConfigError(DivlieError, ValueError):
    """Malformed verification suite file."""


def check_same_n(*ns: int) -> int:
    """Return the common variable count or raise ``DimensionMismatchError``."""
    first = ns[0]
    for other in ns[1:]:
        if other != first:
            raise DimensionMismatchError(
                f"variable counts differ: {first} vs {other}"
            )
    return first


def check_index(i: int, n: int, what: str = "variable") -> int:
    """Validate a 1-based index against ``n``."""
    if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= n:
        raise IndexOutOfRangeError(f"{what} index {i!r} out of range 1..{n}")
    return i
