"""Exception types raised across the package."""


class QgjeError(Exception):
    """Base class for every error raised by this package."""


class IndexOutOfRange(QgjeError, IndexError):
    pass


class ZeroFactor(QgjeError, ValueError):
    pass


class SameRow(QgjeError, ValueError):
    pass


class SameWire(QgjeError, ValueError):
    pass


class NonUnitary(QgjeError, ValueError):
    pass


class NonFiniteAngle(QgjeError, ValueError):
    pass


class NotNormalized(QgjeError, ValueError):
    pass


class BaseMismatch(QgjeError, ValueError):
    pass


class LengthMismatch(QgjeError, ValueError):
    pass


class OperandOutOfRange(QgjeError, ValueError):
    pass


class SizeMismatch(QgjeError, ValueError):
    pass


class InvalidCounts(QgjeError, ValueError):
    pass


class DimensionMismatch(QgjeError, ValueError):
    pass


class InvalidPivot(QgjeError, RuntimeError):
    """A pivot strategy returned an index that does not hold a nonzero entry."""


class ParseError(QgjeError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
