"""Exception types shared across the toolkit."""


class PLocalError(Exception):
    """Base class for all toolkit errors."""


class InvalidPermutation(PLocalError):
    """Raised for image arrays that are not bijections, or degree mismatches."""


class OrderBoundExceeded(PLocalError):
    """Raised when group closure grows past the configured order bound."""

    def __init__(self, bound: int):
        super().__init__(f"group closure exceeded the order bound {bound}")
        self.bound = bound


class NotPSubgroup(PLocalError):
    """Raised when an operation requires a p-group and the input is not one."""


class NotCentric(PLocalError):
    """Raised when a linking-system object fails the p-centricity test."""


class BudgetExceeded(PLocalError):
    """Raised when a chain basis (or composition table) would exceed the budget."""

    def __init__(self, degree: int, count: int, budget: int):
        super().__init__(
            f"basis size {count} at degree {degree} exceeds budget {budget}"
        )
        self.degree = degree
        self.count = count
        self.budget = budget


class NotAFunctor(PLocalError):
    """Raised when a value assignment fails the exhaustive functoriality check."""


class UpwardClosureViolated(PLocalError):
    """Raised when a subcollection is not closed under overgroups within its ambient collection."""


class ParseError(PLocalError):
    """Raised on malformed cycle notation; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class OutOfRangePoint(PLocalError):
    """Raised when a cycle mentions a point outside the stated degree."""
