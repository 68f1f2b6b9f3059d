"""Exception types shared across the package."""


class HorwError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HorwError):
    """An input file could not be parsed.

    Carries the offending line number when one is known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConvergenceError(HorwError):
    """An iterative solver exhausted its iteration budget."""

    def __init__(self, message: str, residual: float | None = None):
        self.residual = residual
        if residual is not None:
            message = f"{message} (final residual {residual:.3e})"
        super().__init__(message)


class CliqueCapError(HorwError):
    """Maximal-clique enumeration exceeded the configured cap."""
