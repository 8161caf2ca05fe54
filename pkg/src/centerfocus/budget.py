"""Cooperative time budgets for potentially explosive symbolic computations.

Long-running kernels (fraction-free elimination, large polynomial products)
poll :func:`check_budget` and abort with :class:`BudgetExceeded` once the
deadline set by the innermost :func:`budget` scope has passed.  With no
active scope the check is free and never fires.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from contextvars import ContextVar

_deadline: ContextVar[float | None] = ContextVar("centerfocus_deadline", default=None)


class BudgetExceeded(RuntimeError):
    """Raised when a computation runs past its allotted wall-clock budget."""


@contextmanager
def budget(seconds: float | None):
    """Limit the wrapped computation to ``seconds`` of wall-clock time.

    ``None`` means unlimited.  Scopes nest; the tightest deadline wins.
    """
    if seconds is None:
        yield
        return
    new = time.monotonic() + seconds
    current = _deadline.get()
    token = _deadline.set(min(new, current) if current is not None else new)
    try:
        yield
    finally:
        _deadline.reset(token)


def check_budget() -> None:
    """Raise :class:`BudgetExceeded` if the active deadline has passed."""
    deadline = _deadline.get()
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("computation exceeded its time budget")
