"""Exception types shared across the package."""
from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class DegenerateInputError(ValueError):
    """Inputs coincide where the operation needs them distinct."""


class NonExpandableError(DomainError):
    """The denominator vanishes at the origin of the expansion variables."""


class ConsistencyError(ArithmeticError):
    """An internal cross-check failed (for example a division that should be exact)."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured element budget."""

    def __init__(self, what: str, estimate: int, budget: int):
        super().__init__(f"{what}: {estimate} elements exceeds budget {budget}")
        self.what = what
        self.estimate = estimate
        self.budget = budget
