"""Enumeration budgets.

Every exhaustive sweep states its work (roughly the number of elementary
table lookups) up front; work above the budget raises ``BudgetExceeded``.
The ``DOSUM_BUDGET`` environment variable overrides the default.
"""

from __future__ import annotations

import os

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**9


def budget_limit(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("DOSUM_BUDGET")
    if raw is None or not raw.strip():
        return default
    return int(float(raw))


def check_budget(work: int, what: str, limit: int | None = None) -> None:
    limit = budget_limit() if limit is None else limit
    if work > limit:
        raise BudgetExceeded(f"{what}: work {work:.3g} exceeds budget {limit:.3g}")
