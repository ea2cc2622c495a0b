"""Exception types shared across the toolkit."""


class DataError(Exception):
    """Bad input data: malformed transcripts, inconsistent label maps, etc."""


class ParseError(DataError):
    """Transcript text could not be parsed. Carries a 1-based line number when known."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class ConfigError(DataError):
    """Invalid pipeline configuration value."""


class IsolatedCharacterError(DataError):
    """A character has no conversational neighbors (zero relation row)."""
