"""Exception types raised by the library."""


class ZernikeError(Exception):
    """Base class for library errors."""


class ParameterError(ZernikeError, ValueError):
    """Invalid index or parameter combination (parity, range, sign)."""


class ParseError(ZernikeError, ValueError):
    """Malformed line in one of the whitespace-separated text formats."""

    def __init__(self, message, source="<input>", lineno=None):
        self.source = source
        self.lineno = lineno
        where = source if lineno is None else f"{source}:{lineno}"
        super().__init__(f"{where}: {message}")


class FitError(ZernikeError, ValueError):
    """Least-squares problem cannot be solved as posed."""


class UnderdeterminedError(FitError):
    pass


class RankDeficientError(FitError):
    def __init__(self, message, rank=None, size=None):
        self.rank = rank
        self.size = size
        super().__init__(message)
