"""Exception types shared across the package."""


class SigtakError(Exception):
    """Base class for package-specific errors."""


class SignSpecError(SigtakError, ValueError):
    """Malformed sign-spec string; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (position {position})"
        super().__init__(message)


class DomainError(SigtakError, ValueError):
    """Argument outside an operation's mathematical domain."""


class BudgetError(SigtakError, RuntimeError):
    """Requested enumeration exceeds the configured resource budget."""
