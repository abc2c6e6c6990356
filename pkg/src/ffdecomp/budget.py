"""Work caps for exhaustive searches."""

from __future__ import annotations


class BudgetExhausted(RuntimeError):
    """The search ran out of budget before reaching an answer.

    Never means "no solution": callers must report it as a third outcome.
    """


class Budget:
    """Counts units of work and raises :class:`BudgetExhausted` past ``limit``.

    ``limit=None`` means unlimited (the counter still runs).
    """

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.spent = 0

    def spend(self, n: int = 1) -> None:
        self.spent += n
        if self.limit is not None and self.spent > self.limit:
            raise BudgetExhausted(f"budget of {self.limit} exhausted")

    def check(self, n: int) -> None:
        """Fail up front if ``n`` more units would exceed the limit."""
        if self.limit is not None and self.spent + n > self.limit:
            raise BudgetExhausted(f"{n} units needed, {self.limit - self.spent} left")

    def __repr__(self) -> str:
        return f"Budget(limit={self.limit}, spent={self.spent})"


def as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)
