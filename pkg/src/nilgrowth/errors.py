"""Error types shared across the package."""
from __future__ import annotations


class NilgrowthError(Exception):
    """Base class for package errors."""


class SpecError(NilgrowthError):
    """Malformed group spec or element/spec mismatch."""


class BudgetError(NilgrowthError):
    """An enumeration would exceed the configured resource budget."""

    def __init__(self, message: str, needed: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget


class StructuralError(NilgrowthError):
    """A structural verification (invariant or cross-check) failed."""
