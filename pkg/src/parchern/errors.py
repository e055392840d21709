"""Exception hierarchy shared by all modules."""
from __future__ import annotations


class ParchernError(Exception):
    """Base class for errors raised by this package."""


class ModelMismatchError(ParchernError, ValueError):
    """Two operands live in different Chow models (or over different divisors)."""


class InvalidModelError(ParchernError, ValueError):
    """A Chow model, ring map or family failed its load-time validation."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class SchemaError(ParchernError, ValueError):
    """Malformed input data.  ``path`` locates the offending JSON node."""

    def __init__(self, message: str, path: str = "$", source: str | None = None):
        self.message = message
        self.path = path
        self.source = source
        where = f"{source}: " if source else ""
        super().__init__(f"{where}{path}: {message}")


class PreconditionError(ParchernError, ValueError):
    """An operation was called outside its documented domain."""
