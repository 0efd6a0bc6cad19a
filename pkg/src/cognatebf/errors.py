"""Exception hierarchy shared by every stage of the toolkit."""


class CognateError(Exception):
    """Base class for all errors raised by cognatebf."""


class DimensionError(CognateError, ValueError):
    """Operands disagree on the number of variables (or table shape)."""


class CapacityError(CognateError, ValueError):
    """Input exceeds a hard size cap of an operation."""


class ParseError(CognateError, ValueError):
    """Malformed text input; carries a 1-based line and column when known."""

    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(self._render())

    def _render(self):
        where = self.source or "<input>"
        if self.line is not None:
            where += f":{self.line}"
            if self.column is not None:
                where += f":{self.column}"
        return f"{where}: {self.message}"


class SearchFailure(CognateError):
    """Search budget exhausted; ``best`` and ``report`` hold the best candidate seen."""

    def __init__(self, message, best=None, report=None):
        super().__init__(message)
        self.best = best
        self.report = report


class ConvergenceError(CognateError, ArithmeticError):
    pass


class UnsupportedDimensionError(CognateError, ValueError):
    pass


class MatrixError(CognateError, ValueError):
    """Invalid pairwise-comparison matrix; ``cell`` is the offending (row, col)."""

    def __init__(self, message, cell=None):
        self.cell = cell
        super().__init__(message if cell is None else f"{message} at cell {cell}")
