"""Work budgets for the brute-force oracles and state sums.

Exhaustive checks exist for desk-scale certification only; anything
that would exceed the budget is refused up front instead of running
for hours.  The default of 10^9 elementary steps can be overridden per
call or through the FACECOLOR_BUDGET environment variable.
"""

from __future__ import annotations

import os

DEFAULT_BUDGET = 1_000_000_000


class BudgetError(RuntimeError):
    """Requested computation exceeds the configured step budget."""

    def __init__(self, what: str, steps: int, budget: int):
        super().__init__(
            f"{what} needs about {steps} elementary steps, over the budget of "
            f"{budget}; raise the budget to force it"
        )
        self.steps = steps
        self.budget = budget


def effective_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("FACECOLOR_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def charge(what: str, steps: int, budget: int | None) -> None:
    limit = effective_budget(budget)
    if steps > limit:
        raise BudgetError(what, steps, limit)
