"""Shared exception types."""


class InvariantViolation(RuntimeError):
    """An internal cross-check failed (e.g. two independent algorithms disagree).

    This never indicates bad user input; it indicates a bug in this package
    and maps to exit code 2 in the command-line front end.
    """


class FactorizationError(ValueError):
    """An integer resisted the implemented factorization strategy."""
