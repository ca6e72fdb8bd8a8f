"""Shared exception types for turankit."""


class TurankitError(Exception):
    """Base class for all package-specific errors."""


class BudgetExceededError(TurankitError):
    """A configured search or size budget was exhausted before completion."""


class IndeterminateBracketsError(TurankitError):
    """Density brackets overlap, so the comparison cannot be decided.

    Retrying with a larger bracketing size N usually resolves it.
    """


class FormatError(TurankitError):
    """A file or argument does not parse under the documented format."""
