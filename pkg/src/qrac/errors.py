"""Shared exception types."""

from __future__ import annotations


class CostLimitError(RuntimeError):
    """A request exceeded a hard size guard on an exact enumeration.

    Raised instead of silently attempting a computation whose cost grows
    exponentially (or worse) in the problem size.  The CLI maps this to its
    own exit code so scripts can tell "too large" apart from bad usage.
    """
