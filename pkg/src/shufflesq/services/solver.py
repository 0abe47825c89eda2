"""Decision, distance and certificate services over words."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from itertools import combinations, islice, permutations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.budget import NodeBudget
from ..core.config import AppConfig
from ..core.errors import BudgetExceeded, CharacterizationError, ConfigError, GraphError, ShuffleError
from ..core.graph import OrderedMultigraph, graph_from_twins, twins_from_graph
from ..core.models import ReasonTag, Rule, Verdict
from ..core.records import GapCensusRow
from ..core.twins import Twins, canonicalize
from ..core.words import Word, concat, format_word, is_dull, is_even, rotate_runs, runs
from ..utils.integrity import verify_certificate
from .closed_forms import (
    Classification,
    claim_cl_applies,
    classify_1and2,
    classify_few_runs,
    fits_1and2_shape,
    fits_abba_shape,
    fits_ths1_shape,
    is_binary,
    theorem_abba_applies,
)
from .constructions import SeparatedOnesInstance, build_ths1_certificate, solve_separated_ones
from .oracle import decide_reverse_shuffle_square, oracle_shuffle_square
from .search import SquareSearch, TwinSearch, loops_only

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Certificate:
    """Outcome of a shuffle-square decision."""

    word: Word
    verdict: Verdict
    rule: Rule
    graph: Optional[OrderedMultigraph] = None
    reason: Optional[ReasonTag] = None
    rationale: str = ""
    nodes: int = 0
    time_ms: float = 0.0

    @property
    def is_square(self) -> bool:
        return self.verdict == Verdict.YES

    def twins(self) -> Optional[Twins]:
        if self.graph is None:
            return None
        return twins_from_graph(self.graph, self.word)


@dataclass(frozen=True, slots=True)
class CutWitness:
    """Cut ``source`` after the given positions and reorder the blocks (1-based)."""

    source: Word
    cuts: Tuple[int, ...]
    order: Tuple[int, ...]

    @property
    def c(self) -> int:
        return len(self.cuts)

    def blocks(self) -> List[Word]:
        return split_blocks(self.source, self.cuts)

    def assembled(self) -> Word:
        blocks = self.blocks()
        return concat([blocks[index - 1] for index in self.order])


@dataclass(frozen=True, slots=True)
class DistanceReport:
    word: Word
    f: int
    twins: Twins
    optimal: bool = True
    nodes: int = 0
    time_ms: float = 0.0
    cut: Optional[CutWitness] = None

    @property
    def g(self) -> int:
        return len(self.word) - 2 * self.f


def split_blocks(word: Word, cuts: Sequence[int]) -> List[Word]:
    bounds = [0, *cuts, len(word)]
    if len(word) and any(left >= right for left, right in zip(bounds, bounds[1:])):
        raise ShuffleError(f"cut positions {list(cuts)} must increase strictly inside 1..{len(word) - 1}")
    return [word[left:right] for left, right in zip(bounds, bounds[1:])]


class ShuffleSolver:
    """Exact procedures with the configured budgets."""

    def __init__(self, config: Optional[AppConfig] = None) -> None:
        self._config = config or AppConfig()
        self._budgets = self._config.budgets

    @property
    def config(self) -> AppConfig:
        return self._config

    # ------------------------------------------------------------ decisions

    def decide(self, word: Word, rule: Rule = Rule.AUTO) -> Certificate:
        """Decide whether ``word`` is a shuffle square.

        ``Rule.AUTO`` tries the closed forms before the exact search,
        ``Rule.SEARCH`` goes straight to the search and ``Rule.ORACLE`` runs
        the position-level reference procedure. Budget exhaustion yields a
        ``budget`` verdict, never a wrong answer.
        """

        trivial = self._trivial(word)
        if trivial is not None:
            return trivial
        if rule == Rule.ORACLE:
            return self._oracle(word)
        if rule == Rule.AUTO:
            started = time.perf_counter()
            classified = self._classify(word)
            if classified is not None:
                return self._from_classification(word, classified, started)
        elif rule != Rule.SEARCH:
            raise ConfigError(f"decide accepts rules auto, search or oracle, got {rule.value!r}")
        return self._search(word)

    def _trivial(self, word: Word) -> Optional[Certificate]:
        if not len(word):
            return Certificate(word, Verdict.YES, Rule.TRIVIAL, OrderedMultigraph(()), rationale="empty word")
        if len(word) % 2:
            return Certificate(word, Verdict.NO, Rule.TRIVIAL, reason=ReasonTag.ODD_LENGTH, rationale="odd length")
        if not is_even(word):
            return Certificate(
                word, Verdict.NO, Rule.TRIVIAL, reason=ReasonTag.NOT_EVEN, rationale="some letter occurs an odd number of times"
            )
        return None

    def _oracle(self, word: Word) -> Certificate:
        started = time.perf_counter()
        try:
            square = oracle_shuffle_square(word, self._budgets.oracle_max_length)
        except BudgetExceeded as exc:
            logger.warning("oracle refused %s: %s", word.text, exc)
            return Certificate(word, Verdict.BUDGET, Rule.ORACLE, rationale=str(exc))
        elapsed = (time.perf_counter() - started) * 1000.0
        if square:
            return Certificate(word, Verdict.YES, Rule.ORACLE, rationale="overhang search", time_ms=elapsed)
        return Certificate(word, Verdict.NO, Rule.ORACLE, reason=ReasonTag.EXHAUSTED, time_ms=elapsed)

    def _classify(self, word: Word) -> Optional[Classification]:
        view = runs(word)
        if is_dull(view):
            return Classification(True, Rule.DULL, "every run has even length", loops_only(view))
        if not is_binary(view):
            return None
        max_terms = self._budgets.subset_sum_max_terms
        if fits_abba_shape(view) and len(view) // 2 <= max_terms and theorem_abba_applies(view, max_terms):
            return Classification(
                False, Rule.THEOREM_ABBA, "odd outer runs, even inner runs and no equal split of the other letter's runs"
            )
        if claim_cl_applies(view):
            return Classification(False, Rule.CLAIM_CL, "first run odd and later runs strictly decreasing")
        if len(view) <= 5:
            return classify_few_runs(view)
        if fits_ths1_shape(view):
            graph = build_ths1_certificate(word)
            if graph is None:
                return Classification(False, Rule.THS1, "(1001)^n with n odd")
            return Classification(True, Rule.THS1, "0-runs of length 2, 1-runs of length at most 2", graph)
        if fits_1and2_shape(view):
            return classify_1and2(view)
        if set(view.symbols) == {0, 1} and all(run.length == 1 for run in view if run.symbol == 1):
            return self._separated_ones(word)
        return None

    def _separated_ones(self, word: Word) -> Optional[Classification]:
        instance = SeparatedOnesInstance.from_word(word)
        if instance.m < 2:
            return None
        solutions = solve_separated_ones(instance)
        if not solutions:
            return None
        graph = graph_from_twins(canonicalize(solutions[0].twins()))
        return Classification(True, Rule.SEPARATED_ONES, f"{len(solutions)} alternating solution(s)", graph)

    def _from_classification(self, word: Word, classified: Classification, started: float) -> Certificate:
        elapsed = (time.perf_counter() - started) * 1000.0
        if not classified.is_square:
            reason = {Rule.THEOREM_ABBA: ReasonTag.THEOREM_ABBA, Rule.CLAIM_CL: ReasonTag.CLAIM_CL}.get(classified.rule)
            return Certificate(word, Verdict.NO, classified.rule, reason=reason, rationale=classified.rationale, time_ms=elapsed)
        graph = classified.graph
        nodes = 0
        if graph is None:
            found = self._search(word)
            graph, nodes = found.graph, found.nodes
        certificate = Certificate(
            word,
            Verdict.YES,
            classified.rule,
            graph,
            rationale=classified.rationale,
            nodes=nodes,
            time_ms=(time.perf_counter() - started) * 1000.0,
        )
        return self._verified(certificate)

    def _search(self, word: Word) -> Certificate:
        budget = NodeBudget(self._budgets.node_budget)
        search = SquareSearch(runs(word), budget, self._budgets.memo_limit)
        try:
            graph = search.find()
        except BudgetExceeded as exc:
            logger.warning("node budget exhausted after %d expansions on %s", exc.nodes, word.text)
            return Certificate(
                word, Verdict.BUDGET, Rule.SEARCH, rationale=str(exc), nodes=budget.used, time_ms=budget.elapsed_ms
            )
        if graph is None:
            return Certificate(
                word,
                Verdict.NO,
                Rule.SEARCH,
                reason=ReasonTag.EXHAUSTED,
                rationale="no nest-free graph matches the runs",
                nodes=budget.used,
                time_ms=budget.elapsed_ms,
            )
        certificate = Certificate(
            word, Verdict.YES, Rule.SEARCH, graph, rationale="nest-free graph found", nodes=budget.used, time_ms=budget.elapsed_ms
        )
        return self._verified(certificate)

    def _verified(self, certificate: Certificate) -> Certificate:
        if certificate.graph is None:
            return certificate
        report = verify_certificate(certificate.word, certificate.graph)
        if report.ok:
            return certificate
        issues = "; ".join(report.issues)
        logger.error("%s certificate for %s failed verification: %s", certificate.rule.value, certificate.word.text, issues)
        if certificate.rule == Rule.SEARCH:
            raise GraphError(f"search produced an invalid certificate for {certificate.word.text}: {issues}")
        return self._search(certificate.word)

    def enumerate_certificates(self, word: Word, limit: Optional[int] = None) -> List[OrderedMultigraph]:
        """Every perfect nest-free graph of ``word`` in search order, up to ``limit``."""

        if self._trivial(word) is not None:
            return [OrderedMultigraph(())] if not len(word) else []
        search = SquareSearch(runs(word), NodeBudget(self._budgets.node_budget), self._budgets.memo_limit)
        return list(islice(search.enumerate(), limit))

    # ------------------------------------------------------------- distances

    def longest_twins(self, word: Word, max_cuts: Optional[int] = None) -> DistanceReport:
        """Longest canonical twins; ``g = n - 2f``.

        When the budget runs out the report falls back to loops inside every
        run and is flagged as not optimal. With ``max_cuts`` the cutting
        distance is attached as well.
        """

        view = runs(word)
        budget = NodeBudget(self._budgets.node_budget)
        if not len(word):
            return DistanceReport(word, 0, Twins.empty(word))
        optimal = True
        try:
            f, graph = TwinSearch(view, budget, self._budgets.memo_limit).best()
        except BudgetExceeded as exc:
            logger.warning("longest twins for %s: %s; reporting a lower bound", word.text, exc)
            graph = loops_only(view)
            f = sum(edge.mu for edge in graph.edges)
            optimal = False
        tw = twins_from_graph(graph, view)
        if tw.length != f:
            raise ShuffleError(f"reconstructed twins have length {tw.length}, expected {f}")
        cut = self.cutting_distance(word, max_cuts) if max_cuts is not None else None
        return DistanceReport(word, f, tw, optimal=optimal, nodes=budget.used, time_ms=budget.elapsed_ms, cut=cut)

    def reverse_square(self, word: Word) -> bool:
        return decide_reverse_shuffle_square(word, self._budgets.reverse_max_length)

    def cutting_distance(self, word: Word, max_cuts: Optional[int] = None) -> Optional[CutWitness]:
        """Fewest cuts whose blocks, reordered, form a shuffle square.

        Cut vectors and then block orders are tried in lexicographic order, so
        the first witness found is the lexicographically smallest one.
        """

        limit = self._budgets.max_cuts if max_cuts is None else max_cuts
        if not 0 <= limit <= self._budgets.max_cuts:
            raise ConfigError(f"max cuts must lie in 0..{self._budgets.max_cuts}, got {limit}")
        if len(word) % 2 or not is_even(word):
            return None
        verdicts: Dict[Tuple[int, ...], bool] = {}

        def square(candidate: Word) -> bool:
            key = candidate.symbols
            if key not in verdicts:
                verdicts[key] = self.decide(candidate).is_square
            return verdicts[key]

        n = len(word)
        for c in range(min(limit, max(n - 1, 0)) + 1):
            for cuts in combinations(range(1, n), c):
                blocks = split_blocks(word, cuts)
                for order in permutations(range(c + 1)):
                    if c and order == tuple(range(c + 1)):
                        continue
                    if square(concat([blocks[index] for index in order])):
                        logger.debug("cutting distance %d for %s after %d decisions", c, word.text, len(verdicts))
                        return CutWitness(word, cuts, tuple(index + 1 for index in order))
        return None

    # -------------------------------------------------------- characterizations

    def square_rotations(self, word: Word) -> List[int]:
        """Run offsets whose rotation of ``word`` is a shuffle square."""

        view = runs(word)
        if not len(view):
            return [0]
        return [count for count in range(len(view)) if self.decide(rotate_runs(view, count)).is_square]

    def four_run_cut(self, word: Word) -> CutWitness:
        """A witness of ``c <= 1`` for an even word with four runs."""

        view = runs(word)
        if len(view) != 4 or not is_even(view):
            raise CharacterizationError("expected an even word with exactly four runs")
        rotations = self.square_rotations(word)
        if not rotations:
            raise CharacterizationError(f"no run rotation of {word.text} is a shuffle square")
        count = rotations[0]
        if count == 0:
            return CutWitness(word, (), (1,))
        return CutWitness(word, (view.starts[count],), (2, 1))

    def max_gap_census(self, lengths: Iterable[int]) -> List[GapCensusRow]:
        """Largest ``g`` over even binary words of each length, with a witness."""

        rows: List[GapCensusRow] = []
        for n in lengths:
            if n > self._budgets.census_max_length:
                raise BudgetExceeded(n, self._budgets.census_max_length, f"census supports lengths up to {self._budgets.census_max_length}")
            best_g, best_word = 0, Word((), 2)
            # complementing letters preserves g, so fix the first letter
            for tail in product((0, 1), repeat=max(n - 1, 0)):
                candidate = Word(((0,) + tail) if n else (), 2)
                if not is_even(candidate):
                    continue
                g = self.longest_twins(candidate).g
                if g > best_g:
                    best_g, best_word = g, candidate
            rows.append(GapCensusRow(length=n, max_gaps=best_g, word=format_word(best_word)))
        return rows


def decide_shuffle_square(word: Word, rule: Rule = Rule.AUTO, config: Optional[AppConfig] = None) -> Certificate:
    return ShuffleSolver(config).decide(word, rule)


def longest_twins(word: Word, config: Optional[AppConfig] = None) -> DistanceReport:
    return ShuffleSolver(config).longest_twins(word)


def cutting_distance(word: Word, max_cuts: int, config: Optional[AppConfig] = None) -> Optional[CutWitness]:
    return ShuffleSolver(config).cutting_distance(word, max_cuts)


def enumerate_certificates(word: Word, limit: Optional[int] = None, config: Optional[AppConfig] = None) -> List[OrderedMultigraph]:
    return ShuffleSolver(config).enumerate_certificates(word, limit)
