"""Depth-first construction of nest-free graphs over the runs of a word.

Vertices are visited left to right. The state between two vertices is the
queue of open edges, one block per left endpoint, in the order the edges were
opened. Nest-freeness forces open edges to close first-in first-out, so a
vertex of capacity ``c`` chooses how many edges it opens (``deg->``) and how
many it closes (``deg<-``) from the front of the queue; closing more than the
queue holds is only possible when every open edge carries the vertex's letter,
and the excess becomes loops.
"""

from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, Iterator, List, Optional, Tuple

from ..core.budget import LRUTable, NodeBudget
from ..core.graph import OrderedMultigraph
from ..core.words import RunLengthWord

logger = logging.getLogger(__name__)

Block = Tuple[int, int]
Queue = Tuple[Block, ...]
EdgeList = List[Tuple[int, int, int]]

_INFEASIBLE = -1


class _RunSearch:
    """Shared state for the search kernels over one word."""

    def __init__(self, word: RunLengthWord, budget: NodeBudget) -> None:
        self.word = word
        self.letters = word.symbols
        self.capacities = word.lengths
        self.m = len(word)
        self.budget = budget
        self._suffix: List[Dict[int, int]] = [{} for _ in range(self.m + 1)]
        self._suffix_total = [0] * (self.m + 1)
        for v in range(self.m - 1, -1, -1):
            totals = dict(self._suffix[v + 1])
            totals[self.letters[v]] = totals.get(self.letters[v], 0) + self.capacities[v]
            self._suffix[v] = totals
            self._suffix_total[v] = self._suffix_total[v + 1] + self.capacities[v]

    @property
    def nodes(self) -> int:
        return self.budget.used

    def letter_key(self, queue: Queue) -> Tuple[Tuple[int, int], ...]:
        merged: List[Tuple[int, int]] = []
        for p, count in queue:
            letter = self.letters[p]
            if merged and merged[-1][0] == letter:
                merged[-1] = (letter, merged[-1][1] + count)
            else:
                merged.append((letter, count))
        return tuple(merged)

    def pop_limit(self, queue: Queue, v: int) -> Tuple[int, int]:
        """Queue size and the number of leading open edges carrying ``v``'s letter."""

        letter = self.letters[v]
        total = sum(count for _, count in queue)
        front = 0
        for p, count in queue:
            if self.letters[p] != letter:
                break
            front += count
        return total, front

    def advance(self, queue: Queue, v: int, opened: int, closed: int) -> Tuple[Queue, EdgeList]:
        edges: EdgeList = []
        blocks = list(queue)
        remaining = closed
        while remaining and blocks:
            p, count = blocks[0]
            take = min(count, remaining)
            edges.append((p, v, take))
            remaining -= take
            if take == count:
                blocks.pop(0)
            else:
                blocks[0] = (p, count - take)
        own = opened
        if remaining:
            edges.append((v, v, remaining))
            own -= remaining
        if own:
            blocks.append((v, own))
        return tuple(blocks), edges

    def closable(self, queue: Queue, v: int, exact: bool) -> bool:
        """Every open edge still finds a partner among the runs from ``v`` on."""

        pending: Counter = Counter()
        for p, count in queue:
            pending[self.letters[p]] += count
        suffix = self._suffix[v]
        for letter, count in pending.items():
            left = suffix.get(letter, 0)
            if count > left:
                return False
            if exact and (left - count) % 2:
                return False
        return True

    def graph(self, edges: EdgeList) -> OrderedMultigraph:
        return OrderedMultigraph.for_runs(self.word, edges)


class SquareSearch(_RunSearch):
    """Find nest-free graphs with degree equal to capacity at every vertex."""

    def __init__(self, word: RunLengthWord, budget: NodeBudget, memo_limit: int) -> None:
        super().__init__(word, budget)
        self._failed: LRUTable[bool] = LRUTable(memo_limit)

    def moves(self, queue: Queue, v: int) -> Iterator[Tuple[int, int]]:
        capacity = self.capacities[v]
        total, front = self.pop_limit(queue, v)
        if front == total:
            most = min(capacity, (total + capacity) // 2)
        else:
            most = min(capacity, front)
        for closed in range(most, -1, -1):
            yield capacity - closed, closed

    def find(self) -> Optional[OrderedMultigraph]:
        edges = self._solve(0, ())
        logger.debug("square search expanded %d nodes (%d memo hits)", self.nodes, self._failed.hits)
        return None if edges is None else self.graph(edges)

    def enumerate(self) -> Iterator[OrderedMultigraph]:
        for edges in self._each(0, ()):
            yield self.graph(edges)

    def _solve(self, v: int, queue: Queue) -> Optional[EdgeList]:
        if v == self.m:
            return [] if not queue else None
        key = (v, self.letter_key(queue))
        if self._failed.get(key):
            return None
        self.budget.consume()
        for opened, closed in self.moves(queue, v):
            following, edges = self.advance(queue, v, opened, closed)
            if not self.closable(following, v + 1, exact=True):
                continue
            rest = self._solve(v + 1, following)
            if rest is not None:
                return edges + rest
        self._failed.put(key, True)
        return None

    def _each(self, v: int, queue: Queue) -> Iterator[EdgeList]:
        if v == self.m:
            if not queue:
                yield []
            return
        key = (v, self.letter_key(queue))
        if key in self._failed:
            return
        self.budget.consume()
        found = False
        for opened, closed in self.moves(queue, v):
            following, edges = self.advance(queue, v, opened, closed)
            if not self.closable(following, v + 1, exact=True):
                continue
            for rest in self._each(v + 1, following):
                found = True
                yield edges + rest
        if not found:
            self._failed.put(key, True)


class TwinSearch(_RunSearch):
    """Maximise the total degree of a nest-free graph with degree at most capacity."""

    def __init__(self, word: RunLengthWord, budget: NodeBudget, memo_limit: int) -> None:
        super().__init__(word, budget)
        self._memo: LRUTable[Tuple[int, Optional[Tuple[int, int]]]] = LRUTable(memo_limit)

    def moves(self, queue: Queue, v: int) -> Iterator[Tuple[int, int]]:
        capacity = self.capacities[v]
        total, front = self.pop_limit(queue, v)
        if front == total:
            most = min(capacity, (total + capacity) // 2)
        else:
            most = min(capacity, front)
        for closed in range(most, -1, -1):
            for opened in range(capacity - closed, max(closed - total, 0) - 1, -1):
                yield opened, closed

    def best(self) -> Tuple[int, OrderedMultigraph]:
        """Largest number of closed edges (the twin length) and a graph achieving it."""

        length = self._value(0, ())
        edges: EdgeList = []
        queue: Queue = ()
        for v in range(self.m):
            entry = self._memo.get((v, self.letter_key(queue)))
            if entry is None:
                self._value(v, queue)
                entry = self._memo.get((v, self.letter_key(queue)))
            assert entry is not None and entry[1] is not None
            opened, closed = entry[1]
            queue, step = self.advance(queue, v, opened, closed)
            edges.extend(step)
        logger.debug("twin search expanded %d nodes (%d memo hits)", self.nodes, self._memo.hits)
        return length, self.graph(edges)

    def _value(self, v: int, queue: Queue) -> int:
        if v == self.m:
            return 0 if not queue else _INFEASIBLE
        key = (v, self.letter_key(queue))
        cached = self._memo.get(key)
        if cached is not None:
            return cached[0]
        self.budget.consume()
        best = _INFEASIBLE
        choice: Optional[Tuple[int, int]] = None
        later = self._suffix_total[v + 1]
        for opened, closed in self.moves(queue, v):
            following, _ = self.advance(queue, v, opened, closed)
            if not self.closable(following, v + 1, exact=False):
                continue
            waiting = sum(count for _, count in following)
            if closed + (later + waiting) // 2 <= best:
                continue
            rest = self._value(v + 1, following)
            if rest == _INFEASIBLE:
                continue
            if closed + rest > best:
                best, choice = closed + rest, (opened, closed)
        self._memo.put(key, (best, choice))
        return best


def loops_only(word: RunLengthWord) -> OrderedMultigraph:
    """Half of every run matched inside the run; always nest-free."""

    return OrderedMultigraph.for_runs(
        word, ((v, v, run.length // 2) for v, run in enumerate(word) if run.length >= 2)
    )
