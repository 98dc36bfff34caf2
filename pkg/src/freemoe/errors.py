"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested quantity."""


class BranchError(DomainError):
    """The point is on the sup-norm branch where the root/derivative route does not apply."""


class ConditioningError(ArithmeticError):
    """A denominator is too close to zero for a trustworthy result."""


class NotFoundError(LookupError):
    """A search exhausted its range without a hit."""
