class WeylError(Exception):
    """Base class for engine errors."""


class PreconditionError(WeylError, ValueError):
    """An operation was called outside its documented domain."""


class VerificationError(WeylError):
    """An internal cross-check disagreed; the payload allows replay."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}


class ParseError(WeylError, ValueError):
    def __init__(self, message, text="", pos=0, expected=()):
        self.text = text
        self.pos = pos
        self.expected = tuple(sorted(set(expected)))
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column = line, col
        msg = f"{message} at line {line}, column {col}"
        if self.expected:
            msg += "; expected one of: " + ", ".join(self.expected)
        super().__init__(msg)
