"""Shared exception types."""


class BudgetExceeded(RuntimeError):
    """An exhaustive sweep would exceed its configured size budget."""


class VerificationFailure(RuntimeError):
    """A runtime self-check that should be mathematically impossible failed.

    Raised when a constructed identity does not verify; it signals an
    arithmetic bug, not a legitimate negative answer.
    """
