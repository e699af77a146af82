"""Exception hierarchy."""


class SylmatchError(Exception):
    """Base class for all errors raised by this package."""


class LexiconParseError(SylmatchError):
    def __init__(self, line_no: int, message: str, path: str | None = None):
        self.line_no = line_no
        self.path = path
        where = f"{path}:{line_no}" if path else f"line {line_no}"
        super().__init__(f"{where}: {message}")


class LexiconConflictError(SylmatchError):
    def __init__(self, wordform: str, first: int, second: int):
        self.wordform = wordform
        self.counts = (first, second)
        super().__init__(f"conflicting syllable counts for {wordform!r}: {first} vs {second}")


class UnknownWordError(SylmatchError):
    def __init__(self, surface: str, position: int):
        self.surface = surface
        self.position = position
        super().__init__(f"unknown word {surface!r} at token position {position}")


class UnsupportedNumberError(SylmatchError, ValueError):
    pass


class EmptyInputError(SylmatchError, ValueError):
    pass


class DomainError(SylmatchError, ValueError):
    pass


class NormalizationError(SylmatchError, ValueError):
    pass


class ConsistencyError(SylmatchError, ValueError):
    pass


class ConfigurationError(SylmatchError, ValueError):
    pass
