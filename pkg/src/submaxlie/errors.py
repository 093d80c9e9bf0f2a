"""Shared error types mapped onto CLI exit codes and service error kinds."""


class UsageError(ValueError):
    """Invalid parameters or violated preconditions."""


class BudgetExceeded(RuntimeError):
    """A search refused to continue past its node/representative budget."""
