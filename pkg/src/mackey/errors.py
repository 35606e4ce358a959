"""Exception hierarchy shared by the package and the command line."""


class MackeyError(Exception):
    """Base class for all package errors."""


class DomainError(MackeyError, ValueError):
    """An input violates a stated invariant or precondition."""


class ConsistencyError(MackeyError, RuntimeError):
    """An internal identity that must hold failed; the datum is inconsistent."""


class InconsistentFlags(DomainError):
    """Two splitting rules fired with contradictory conclusions."""


class ParseError(MackeyError, ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.source = source
