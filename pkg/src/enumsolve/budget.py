"""Soft wall-clock budgets for long computations."""

from __future__ import annotations

import time

__all__ = ["Budget", "BudgetExceeded"]


class BudgetExceeded(RuntimeError):
    pass


class Budget:
    """Deadline checked cooperatively by long-running loops."""

    def __init__(self, ms: int | None = None):
        self.ms = ms
        self.start = time.monotonic()
        self.deadline = None if ms is None else self.start + ms / 1000.0

    def check(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"soft budget of {self.ms} ms exceeded")

    def elapsed_ms(self) -> int:
        return int((time.monotonic() - self.start) * 1000)


NO_BUDGET = Budget(None)
