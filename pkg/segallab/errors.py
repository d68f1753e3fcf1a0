from __future__ import annotations


class SegalLabError(Exception):
    """Base class for every error raised by segallab."""


class InputError(SegalLabError, ValueError):
    """A precondition of an operation does not hold for the given input."""


class CapExceededError(InputError):
    """A category is larger than the configured object or morphism cap."""


class BoundError(SegalLabError):
    """A computation needs a pushout that bounded mode does not guarantee."""


class InvariantBreach(SegalLabError):
    """An invariant that is verified at run time turned out to be false."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None) -> None:
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field:
            location.append(f"field {field}")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
