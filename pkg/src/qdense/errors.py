from __future__ import annotations


class PreconditionError(ValueError):
    """Raised when arguments fall outside an operation's domain."""


class BudgetExceeded(RuntimeError):
    """Raised when a brute-force census would exceed its configured budget."""
