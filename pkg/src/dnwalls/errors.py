"""Exception types shared across the package."""


class DomainError(ValueError):
    """Raised when an argument is outside the operation's domain."""


class IntegrityError(RuntimeError):
    """Raised when an internal invariant fails; always indicates a bug."""


class PerfectnessError(IntegrityError):
    """Raised when a search that must have a unique solution does not."""


class ResourceError(RuntimeError):
    """Raised when generation exceeds its configured budget."""


class UnsupportedInputError(ValueError):
    """Raised for inputs the operation deliberately does not support."""
