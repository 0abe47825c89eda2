"""Bounded worker pool for corpus scans and exhaustive counts."""

from __future__ import annotations

import asyncio
import logging
import random
from itertools import product
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, TypeVar

from ..core.errors import BudgetExceeded, ShuffleError
from ..core.families import FamilySpec, generate
from ..core.models import Verdict
from ..core.records import CensusRow, GraphPayload, ResultRecord, ScanConfig
from ..core.words import Word, format_word, is_even, read_words
from .solver import ShuffleSolver

logger = logging.getLogger(__name__)

T = TypeVar("T")
Item = Tuple[Optional[int], Word]

_CHUNK_DEPTH = 3


class ScanService:
    """Runs solver calls on worker threads, at most ``jobs`` at a time."""

    def __init__(self, solver: ShuffleSolver, jobs: int = 1) -> None:
        if jobs < 1:
            raise ShuffleError(f"jobs must be positive, got {jobs}")
        self._solver = solver
        self._jobs = jobs

    async def _map(self, func: Callable[..., T], calls: Sequence[Tuple]) -> List[T]:
        """Apply ``func`` to every argument tuple; results keep input order."""

        semaphore = asyncio.Semaphore(self._jobs)

        async def _run(args: Tuple) -> T:
            async with semaphore:
                return await asyncio.to_thread(func, *args)

        return list(await asyncio.gather(*(_run(args) for args in calls)))

    # ----------------------------------------------------------------- scans

    def items(self, config: ScanConfig) -> List[Item]:
        """Materialise the words a scan request names."""

        if config.file is not None:
            with config.file.open("r", encoding="utf-8") as handle:
                return [(line, word) for line, word in read_words(handle)]
        if config.family is not None:
            if not config.family:
                raise ShuffleError("family source needs a name")
            spec = FamilySpec.parse(config.family[0], config.family[1:])
            return [(None, generate(spec))]
        if config.exhaustive is not None:
            return [(None, word) for word in _even_words(config.exhaustive, config.k)]
        rng = random.Random(config.seed)
        items: List[Item] = []
        for _ in range(config.random or 0):
            length = 2 * rng.randint(1, max(config.max_length // 2, 1))
            items.append((None, Word(tuple(rng.randrange(config.k) for _ in range(length)), config.k)))
        return items

    async def scan(self, items: Sequence[Item], *, gaps: bool = False) -> List[ResultRecord]:
        logger.debug("scanning %d word(s) with %d job(s)", len(items), self._jobs)
        return await self._map(self._record, [(line, word, gaps) for line, word in items])

    def _record(self, line: Optional[int], word: Word, gaps: bool) -> ResultRecord:
        text = format_word(word)
        try:
            certificate = self._solver.decide(word)
            record = ResultRecord(
                word=text,
                verdict=certificate.verdict,
                rule=certificate.rule,
                reason=certificate.reason,
                certificate=GraphPayload.from_graph(certificate.graph) if certificate.graph is not None else None,
                line=line,
                nodes_expanded=certificate.nodes,
                time_ms=round(certificate.time_ms, 3),
            )
            tw = certificate.twins()
            if tw is not None:
                record.twins = tw.to_text()
            if gaps:
                report = self._solver.longest_twins(word)
                record.f, record.g, record.optimal = report.f, report.g, report.optimal
            return record
        except ShuffleError as exc:
            logger.warning("scan of %s failed: %s", text, exc)
            return ResultRecord(word=text, line=line, error=str(exc))

    # ---------------------------------------------------------------- census

    async def census(self, halves: Sequence[int], k: int = 2) -> List[CensusRow]:
        """Exact counts of even words and shuffle squares of length ``2n``.

        Only words starting with the first letter are decided; renaming
        letters preserves squareness, so the counts are multiplied by ``k``.
        """

        limit = self._solver.config.budgets.census_max_length
        rows: List[CensusRow] = []
        for n in halves:
            length = 2 * n
            if length > limit:
                raise BudgetExceeded(length, limit, f"census supports lengths up to {limit}, got {length}")
            if n == 0:
                rows.append(CensusRow(n=0, k=k, even_words=1, squares=1))
                continue
            depth = min(_CHUNK_DEPTH, length - 1)
            prefixes = [(0,) + tail for tail in product(range(k), repeat=depth)]
            counts = await self._map(self._census_chunk, [(length, k, prefix) for prefix in prefixes])
            even = sum(item[0] for item in counts) * k
            squares = sum(item[1] for item in counts) * k
            rows.append(CensusRow(n=n, k=k, even_words=even, squares=squares))
            logger.debug("census n=%d k=%d: %d squares among %d even words", n, k, squares, even)
        return rows

    def _census_chunk(self, length: int, k: int, prefix: Tuple[int, ...]) -> Tuple[int, int]:
        even = squares = 0
        for tail in product(range(k), repeat=length - len(prefix)):
            word = Word(prefix + tail, k)
            if not is_even(word):
                continue
            even += 1
            certificate = self._solver.decide(word)
            if certificate.verdict == Verdict.BUDGET:
                raise BudgetExceeded(certificate.nodes, self._solver.config.budgets.node_budget)
            squares += certificate.is_square
        return even, squares


def _even_words(length: int, k: int) -> Iterator[Word]:
    for symbols in product(range(k), repeat=length):
        word = Word(symbols, k)
        if is_even(word):
            yield word


def run_scan(service: ScanService, items: Sequence[Item], *, gaps: bool = False) -> List[ResultRecord]:
    return asyncio.run(service.scan(items, gaps=gaps))


def run_census(service: ScanService, halves: Sequence[int], k: int = 2) -> List[CensusRow]:
    return asyncio.run(service.census(halves, k))
