"""Errors shared across the package."""

__all__ = ["PreconditionError", "BudgetExceededError"]


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class BudgetExceededError(RuntimeError):
    """An enumeration or search refused to start (or continue) past its budget."""
