"""Exception hierarchy shared by every module."""


class BipramseyError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(BipramseyError, ValueError):
    """An input violates a documented precondition."""


class SearchCapExceeded(BipramseyError):
    """An exponential search was asked to run beyond its configured cap or budget."""


class BelowRegimeError(BipramseyError):
    """A construction failed because the instance is too small for the guarantee.

    The existence arguments behind several routines only hold for ``n`` above an
    unspecified threshold.  When a desk-scale instance falls short, this error is
    raised instead of :class:`InternalError`.
    """


class InternalError(BipramseyError, AssertionError):
    """A guarantee that should hold unconditionally was violated (a bug)."""
