"""Node budgets and bounded transposition tables for the search kernels."""

from __future__ import annotations

import time
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Generic, Hashable, Optional, TypeVar

from .errors import BudgetExceeded

V = TypeVar("V")


@dataclass(slots=True)
class NodeBudget:
    """Counts node expansions against a fixed capacity."""

    capacity: int
    used: int = 0
    started: float = field(default_factory=time.perf_counter)

    def consume(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.capacity:
            raise BudgetExceeded(self.used, self.capacity)

    @property
    def remaining(self) -> int:
        return max(self.capacity - self.used, 0)

    @property
    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self.started) * 1000.0


class LRUTable(Generic[V]):
    """Transposition table with least-recently-used eviction."""

    def __init__(self, limit: int) -> None:
        self._limit = max(limit, 1)
        self._entries: "OrderedDict[Hashable, V]" = OrderedDict()
        self.hits = 0

    def get(self, key: Hashable) -> Optional[V]:
        value = self._entries.get(key)
        if value is not None:
            self._entries.move_to_end(key)
            self.hits += 1
        return value

    def put(self, key: Hashable, value: V) -> None:
        self._entries[key] = value
        self._entries.move_to_end(key)
        if len(self._entries) > self._limit:
            self._entries.popitem(last=False)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)
