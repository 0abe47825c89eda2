"""Explicit certificates for structured binary families."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Set, Tuple

from ..core.errors import CharacterizationError
from ..core.families import omr_word, separated_ones
from ..core.graph import OrderedMultigraph, find_nest, twins_from_graph
from ..core.twins import Twins, require_valid
from ..core.words import Word, is_even, runs
from .closed_forms import fits_ths1_shape, is_odd_abba

logger = logging.getLogger(__name__)

EdgeList = List[Tuple[int, int, int]]

OMR_MAX_GAPS = 23


# ------------------------------------------------------------ separated ones


@dataclass(frozen=True, slots=True)
class SeparatedOnesInstance:
    """``0^{a_0} 1 0^{a_1} 1 ... 1 0^{a_2m}`` given by its zero counts."""

    zeros: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.zeros) < 3 or len(self.zeros) % 2 == 0:
            raise CharacterizationError(f"expected an odd number (>= 3) of zero counts, got {len(self.zeros)}")
        if any(value < 0 for value in self.zeros):
            raise CharacterizationError("zero counts must be non-negative")

    @property
    def m(self) -> int:
        return (len(self.zeros) - 1) // 2

    def word(self) -> Word:
        return separated_ones(self.zeros)

    @classmethod
    def from_word(cls, word: Word) -> "SeparatedOnesInstance":
        if not set(word) <= {0, 1}:
            raise CharacterizationError("separated ones needs a word over 0 and 1")
        zeros = [0]
        for letter in word:
            if letter == 1:
                zeros.append(0)
            else:
                zeros[-1] += 1
        if len(zeros) % 2 == 0:
            raise CharacterizationError("the number of 1s must be even")
        return cls(tuple(zeros))


@dataclass(frozen=True, slots=True)
class SeparatedOnesSolution:
    instance: SeparatedOnesInstance
    right: Tuple[int, ...]

    @property
    def left(self) -> Tuple[int, ...]:
        return tuple(a - r for a, r in zip(self.instance.zeros, self.right))

    def twins(self) -> Twins:
        return alternating_twins_from_solution(self)


def _half(value: int, upper: int) -> Optional[int]:
    if value % 2 or not 0 <= value // 2 <= upper:
        return None
    return value // 2


def solve_separated_ones(instance: SeparatedOnesInstance) -> List[SeparatedOnesSolution]:
    """All assignments whose twins put odd-numbered 1s in X and even-numbered 1s in Y.

    ``r_i`` zeros of the ``i``-th zero run go to X. Odd-indexed values are chosen
    freely; each even-indexed value is then forced by its two neighbours.
    """

    if instance.m < 2:
        raise CharacterizationError("separated ones needs at least four 1s (m >= 2)")
    a = instance.zeros
    last = len(a) - 1
    found: List[SeparatedOnesSolution] = []

    def extend(values: List[int], index: int) -> Iterator[List[int]]:
        # values holds r_0 .. r_{index - 1}; index is odd
        previous = values[index - 2] if index >= 3 else 0
        for choice in range(a[index] + 1):
            if index == 1:
                even = _half(a[0] + a[1] - choice, a[0])
            else:
                even = _half(a[index - 1] + a[index] - previous - choice, a[index - 1])
            if even is None:
                continue
            following = values + [even, choice]
            if index + 2 > last:
                tail = _half(a[last] - choice, a[last])
                if tail is not None:
                    yield following + [tail]
                continue
            yield from extend(following, index + 2)

    for values in extend([], 1):
        found.append(SeparatedOnesSolution(instance, tuple(values)))
    logger.debug("separated ones %s: %d alternating solution(s)", a, len(found))
    return found


def alternating_twins_from_solution(solution: SeparatedOnesSolution) -> Twins:
    """The first ``r_i`` zeros of each zero run go to X, the rest to Y; 1s alternate."""

    a = solution.instance.zeros
    word = solution.instance.word()
    x: List[int] = []
    y: List[int] = []
    position = 0
    for index, count in enumerate(a):
        if index:
            (x if index % 2 else y).append(position)
            position += 1
        split = solution.right[index]
        x.extend(range(position, position + split))
        y.extend(range(position + split, position + count))
        position += count
    tw = Twins.build(word, x, y)
    require_valid(tw)
    return tw


# ------------------------------------------------------- two-letter zero runs


def build_ths1_certificate(word: Word) -> Optional[OrderedMultigraph]:
    """Perfect nest-free graph for an even word whose 0-runs have length 2 and
    whose 1-runs have length at most 2; ``None`` for ``(1001)^n`` with ``n`` odd.

    Single 1-runs are paired left to right into paths through the double
    1-runs between them; the remaining double 1-runs get a loop. The 0-runs are
    then split, in order, into loops, double edges and triangles.
    """

    view = runs(word)
    if not fits_ths1_shape(view):
        raise CharacterizationError("expected 0-runs of length 2 and 1-runs of length at most 2")
    if not is_even(view):
        raise CharacterizationError("word is not even")
    if is_odd_abba(view):
        return None

    ones = [index for index, run in enumerate(view) if run.symbol == 1]
    zeros = [index for index, run in enumerate(view) if run.symbol == 0]
    singles = [index for index in ones if view[index].length == 1]
    edges: EdgeList = []
    path_edges: Set[Tuple[int, int]] = set()
    covered: Set[int] = set()
    on_path: Set[int] = set()
    for start, end in zip(singles[0::2], singles[1::2]):
        for vertex in range(start, end + 1, 2):
            on_path.add(vertex)
        for vertex in range(start, end, 2):
            edges.append((vertex, vertex + 2, 1))
            path_edges.add((vertex, vertex + 2))
            covered.add(vertex + 1)
    looped = {index for index in ones if index not in on_path}
    edges.extend((index, index, 1) for index in sorted(looped))

    grouping = _group_zero_runs(tuple(zeros), frozenset(covered), frozenset(looped), frozenset(path_edges))
    if grouping is None:
        raise CharacterizationError(f"no grouping of the 0-runs of {word.text} avoids a nest")
    for group in grouping:
        if len(group) == 1:
            edges.append((group[0], group[0], 1))
        elif len(group) == 2:
            edges.append((group[0], group[1], 2))
        else:
            first, middle, last = group
            edges.extend([(first, middle, 1), (middle, last, 1), (first, last, 1)])

    graph = OrderedMultigraph.for_runs(view, edges)
    if not graph.is_perfect() or find_nest(graph) is not None:
        raise CharacterizationError(f"construction for {word.text} is not a perfect nest-free graph")
    return graph


def _group_zero_runs(
    zeros: Tuple[int, ...],
    covered: frozenset,
    looped: frozenset,
    path_edges: frozenset,
) -> Optional[List[Tuple[int, ...]]]:
    """Split the 0-runs into consecutive groups of one, two or three vertices.

    A lone vertex gets a loop and must not sit under a path edge. A group
    spanning a 1-run must not cover a looped 1-run, and a triangle must not
    cover a path edge.
    """

    count = len(zeros)

    @lru_cache(maxsize=None)
    def solve(start: int) -> Optional[Tuple[Tuple[int, ...], ...]]:
        if start == count:
            return ()
        options: List[Tuple[int, ...]] = []
        if zeros[start] not in covered:
            options.append(zeros[start : start + 1])
        if start + 1 < count and zeros[start] + 1 not in looped:
            options.append(zeros[start : start + 2])
        if start + 2 < count:
            left, right = zeros[start] + 1, zeros[start] + 3
            if left not in looped and right not in looped and (left, right) not in path_edges:
                options.append(zeros[start : start + 3])
        for group in options:
            rest = solve(start + len(group))
            if rest is not None:
                return (group,) + rest
        return None

    result = solve(0)
    return None if result is None else list(result)


# ----------------------------------------------------------------- O(m, r)


@dataclass(frozen=True, slots=True)
class OmrConstruction:
    m: int
    r: int
    graph: OrderedMultigraph
    twins: Twins

    @property
    def deficit(self) -> int:
        return self.graph.deficit


def _omr_block_edges(offset: int, size: int, capacity: Callable[[int], int]) -> EdgeList:
    """Edges over ``size = 8k`` consecutive vertices starting at ``offset``."""

    k = size // 8

    def red(local: int) -> int:
        return offset + 2 * local

    def blue(local: int) -> int:
        return offset + 2 * local + 1

    edges: EdgeList = []
    for base in range(0, 4 * k, 4):
        p1, p2, p3, p4 = (red(base + step) for step in range(4))
        edges.extend([(p1, p2, 8), (p1, p3, capacity(p3)), (p2, p4, capacity(p4))])
    edges.append((blue(0), blue(2), capacity(blue(2))))
    for j in range(k - 1):
        b = 1 + 4 * j
        edges.extend(
            [
                (blue(b), blue(b + 2), capacity(blue(b + 2))),
                (blue(b), blue(b + 3), 8),
                (blue(b + 3), blue(b + 5), capacity(blue(b + 5))),
            ]
        )
    edges.append((blue(4 * k - 3), blue(4 * k - 1), capacity(blue(4 * k - 1))))
    return edges


def build_omr_twins(m: int, r: int) -> OmrConstruction:
    """Twins of ``O(m, r)`` leaving fewer than 24 positions unmatched.

    Below 24 runs every vertex gets loops only. Otherwise the first ``r mod 8``
    vertices get loops and the remaining ``8k`` vertices are covered by
    fixed patterns that leave a deficit of 8 at two vertices.
    """

    word = omr_word(m, r)
    view = runs(word)
    capacities = view.lengths

    def capacity(vertex: int) -> int:
        return capacities[vertex]

    if r < 24:
        edges: EdgeList = [(v, v, (capacity(v) - 1) // 2) for v in range(r) if capacity(v) > 1]
    else:
        head = r % 8
        edges = [(v, v, (capacity(v) - 1) // 2) for v in range(head) if capacity(v) > 1]
        edges.extend(_omr_block_edges(head, r - head, capacity))

    graph = OrderedMultigraph.for_runs(view, edges)
    witness = find_nest(graph)
    if witness is not None:
        raise CharacterizationError(f"O({m}, {r}) construction produced a nest at {witness.outer} over {witness.inner}")
    tw = twins_from_graph(graph, view)
    gaps = len(tw.gaps)
    if gaps != graph.deficit:
        raise CharacterizationError(f"O({m}, {r}) twins leave {gaps} gaps but the graph has deficit {graph.deficit}")
    if gaps > OMR_MAX_GAPS:
        raise CharacterizationError(f"O({m}, {r}) construction leaves {gaps} gaps, more than {OMR_MAX_GAPS}")
    logger.debug("O(%d, %d) construction: %d edges, deficit %d", m, r, len(graph.edges), graph.deficit)
    return OmrConstruction(m, r, graph, tw)


def omr_deficits(max_m: int) -> Dict[Tuple[int, int], int]:
    """Deficit of the construction for every ``O(m, r)`` with odd ``m <= max_m``."""

    table: Dict[Tuple[int, int], int] = {}
    for m in range(1, max_m + 1, 2):
        for r in range(1, (m + 1) // 2 + 1):
            table[(m, r)] = build_omr_twins(m, r).deficit
    return table

