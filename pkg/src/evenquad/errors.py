"""Exception types shared across the toolkit."""


class CoverageError(Exception):
    """A primality or count query went past the sieve's covered range."""


class ResourceBudgetError(Exception):
    """Building a prime table would exceed the configured memory budget."""


class BracketError(Exception):
    """Bisection endpoints do not straddle a sign change."""
