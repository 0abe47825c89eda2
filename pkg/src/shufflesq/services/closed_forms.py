"""Closed-form verdicts for structured binary words.

Statements about binary words are phrased for words that start with ``1``;
words starting with the other letter are relabelled first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

from ..core.errors import CharacterizationError
from ..core.graph import OrderedMultigraph
from ..core.models import Rule
from ..core.words import RunLengthWord, is_dull, is_even
from .search import loops_only


@dataclass(frozen=True, slots=True)
class Classification:
    is_square: bool
    rule: Rule
    rationale: str
    graph: Optional[OrderedMultigraph] = None


@dataclass(frozen=True, slots=True)
class Rotation:
    offset: int
    values: Tuple[int, int, int, int]


def binary_lengths(word: RunLengthWord) -> Tuple[int, ...]:
    """Run lengths of a word on at most two letters, read as ``W(n_1, ..., n_r)``."""

    if len(set(word.symbols)) > 2:
        raise CharacterizationError("closed forms apply to words over two letters")
    return word.lengths


def is_binary(word: RunLengthWord) -> bool:
    return len(set(word.symbols)) <= 2


def _require_even(word: RunLengthWord) -> None:
    if not is_even(word):
        raise CharacterizationError("word is not even")


# ------------------------------------------------------------------ few runs


def construct_few_runs(word: RunLengthWord) -> Optional[OrderedMultigraph]:
    """Certificate graph for an even word with at most five runs, or ``None``."""

    count = len(word)
    if not 0 <= count <= 5:
        raise CharacterizationError(f"expected at most 5 runs, got {count}")
    _require_even(word)
    if is_dull(word):
        return loops_only(word)
    if count <= 3:
        return None
    lengths = binary_lengths(word)
    if count == 4:
        a, b, c, d = lengths
        if a >= c and b <= d:
            return OrderedMultigraph.for_runs(
                word, [(0, 2, c), (1, 3, b), (0, 0, (a - c) // 2), (3, 3, (d - b) // 2)]
            )
        return None
    a, b, c, d, e = lengths
    if b == d:
        split = _five_run_split(a, c, e)
        if split is not None:
            c1, c2 = split
            return OrderedMultigraph.for_runs(
                word,
                [(1, 3, b), (0, 2, c1), (2, 4, c2), (0, 0, (a - c1) // 2), (4, 4, (e - c2) // 2)],
            )
    if b <= d and a >= c and e % 2 == 0:
        return OrderedMultigraph.for_runs(
            word, [(0, 2, c), (1, 3, b), (0, 0, (a - c) // 2), (3, 3, (d - b) // 2), (4, 4, e // 2)]
        )
    if b >= d and c <= e and a % 2 == 0:
        return OrderedMultigraph.for_runs(
            word, [(2, 4, c), (1, 3, d), (4, 4, (e - c) // 2), (1, 1, (b - d) // 2), (0, 0, a // 2)]
        )
    return None


def _five_run_split(a: int, c: int, e: int) -> Optional[Tuple[int, int]]:
    for c1 in range(max(0, c - e), min(a, c) + 1):
        c2 = c - c1
        if (a - c1) % 2 == 0 and (e - c2) % 2 == 0:
            return c1, c2
    return None


def classify_few_runs(word: RunLengthWord) -> Classification:
    graph = construct_few_runs(word)
    count = len(word)
    if is_dull(word):
        return Classification(True, Rule.DULL, "every run has even length", graph)
    if count <= 3:
        return Classification(False, Rule.FEW_RUNS, f"{count} runs and not dull")
    lengths = ", ".join(map(str, word.lengths))
    if count == 4:
        rationale = f"four runs ({lengths}): needs a >= c and b <= d"
    else:
        rationale = f"five runs ({lengths}): needs b = d with a parity-feasible split of c, or b <= d, a >= c, e even, or b >= d, c <= e, a even"
    return Classification(graph is not None, Rule.FEW_RUNS, rationale, graph)


# ----------------------------------------------------- four separated ones


def check_2cond(a1: int, a2: int, a3: int, a4: int) -> bool:
    """Shuffle-squareness of ``1 0^a1 1 0^a2 1 0^a3 1 0^a4`` (``a2 >= 1``).

    The twin holding the first ``1`` pairs it with the second, third or
    fourth ``1``. Each pairing leaves one free count, the zeros of ``0^a3``
    that twin takes, and the word is a square when some pairing admits a
    count of the right parity. The bare range test
    ``a3 + a2 >= a1 and a4 >= a3 - a2 - a1`` is not enough once ``a3 = 0``:
    ``11000110`` passes it and is not a square.
    """

    if min(a1, a3, a4) < 0:
        raise CharacterizationError("zero-run lengths must be non-negative")
    if a2 < 1:
        raise CharacterizationError("the second zero run must be non-empty")
    if (a1 + a2 + a3 + a4) % 2:
        raise CharacterizationError("word is not even")
    adjacent = a3 >= a1 and a1 + a4 >= a2 + a3
    outer = _fits(max(0, a3 - a4), min(a3, a2 - a1), a1 + a2)
    crossing = _fits(max(0, a3 - a2 - a1), min(a3, a4, a3 + a2 - a1), a4)
    return adjacent or outer or crossing


def _fits(low: int, high: int, parity: int) -> bool:
    """Whether ``low..high`` holds a value congruent to ``parity`` mod 2."""

    if low > high:
        return False
    return low < high or (low - parity) % 2 == 0


def rotate_to_square_m2(values: Sequence[int]) -> Rotation:
    """A rotation of ``(a_1, ..., a_4)`` that satisfies :func:`check_2cond`.

    Put the smallest value first when it sits next to the largest on the
    cyclic square of corners, otherwise the second smallest.
    """

    if len(values) != 4:
        raise CharacterizationError("expected exactly four zero-run lengths")
    if min(values) < 1:
        raise CharacterizationError("all zero runs must be non-empty")
    current = tuple(values)
    if check_2cond(*current):
        return Rotation(0, current)  # type: ignore[arg-type]
    largest = max(range(4), key=lambda index: (current[index], -index))
    order = sorted(range(4), key=lambda index: (current[index], index))
    smallest = order[0]
    start = smallest if (smallest - largest) % 4 in (1, 3) else order[1]
    candidates = [start] + [offset for offset in range(4) if offset != start]
    for offset in candidates:
        rotated = current[offset:] + current[:offset]
        if check_2cond(*rotated):
            return Rotation(offset, rotated)  # type: ignore[arg-type]
    raise CharacterizationError(f"no rotation of {current} satisfies the four-run condition")


# ---------------------------------------------------------- abba-type words


def has_equal_split(values: Sequence[int], max_terms: int = 40) -> bool:
    """Exact subset-sum test for a split into two parts of equal sum."""

    if len(values) > max_terms:
        raise CharacterizationError(f"equal-split test supports at most {max_terms} terms, got {len(values)}")
    total = sum(values)
    if total % 2:
        return False
    target = total // 2
    middle = len(values) // 2
    left = _subset_sums(values[:middle])
    return any(target - partial in left for partial in _subset_sums(values[middle:]))


def _subset_sums(values: Sequence[int]) -> Set[int]:
    sums = {0}
    for value in values:
        sums |= {partial + value for partial in sums}
    return sums


def abba_shape(word: RunLengthWord) -> Tuple[List[int], List[int]]:
    """Split ``1^{a_1} 0^{b_1} ... 0^{b_n} 1^{a_{n+1}}`` into its ``a`` and ``b`` lists."""

    lengths = binary_lengths(word)
    if len(lengths) < 3 or len(lengths) % 2 == 0:
        raise CharacterizationError("expected a word that starts and ends with the same letter and has a middle run")
    return list(lengths[0::2]), list(lengths[1::2])


def fits_abba_shape(word: RunLengthWord) -> bool:
    return is_binary(word) and len(word) >= 3 and len(word) % 2 == 1


def theorem_abba_applies(word: RunLengthWord, max_terms: int = 40) -> bool:
    """Outer runs odd, inner runs of the outer letter even and no equal split of the
    other runs; when true the word is not a shuffle square."""

    a, b = abba_shape(word)
    if a[0] % 2 == 0 or a[-1] % 2 == 0:
        return False
    if any(value % 2 for value in a[1:-1]):
        return False
    return not has_equal_split(b, max_terms)


# ----------------------------------------------------- alternating W(n_1..n_r)


def claim_cl_applies(word: RunLengthWord) -> bool:
    """``n_1`` odd and ``n_2 > ... > n_r``; when true the word is not a shuffle square."""

    lengths = binary_lengths(word)
    if not lengths or lengths[0] % 2 == 0:
        return False
    tail = lengths[1:]
    return all(left > right for left, right in zip(tail, tail[1:]))


def lower_bound_g(word: RunLengthWord, require_odd: bool = True) -> int:
    """``min(r, delta)`` for ``W(n_1 > ... > n_r)``, ``delta`` the smallest consecutive gap."""

    lengths = binary_lengths(word)
    if not lengths:
        raise CharacterizationError("word has no runs")
    if any(left <= right for left, right in zip(lengths, lengths[1:])):
        raise CharacterizationError("run lengths must be strictly decreasing")
    if require_odd and any(length % 2 == 0 for length in lengths):
        raise CharacterizationError("run lengths must all be odd")
    gaps = [left - right for left, right in zip(lengths, lengths[1:])]
    delta = min(gaps) if gaps else math.inf
    return int(min(len(lengths), delta))


# ---------------------------------------------- ones of length one, zeros <= 2


def fits_1and2_shape(word: RunLengthWord) -> bool:
    if not set(word.symbols) <= {0, 1}:
        return False
    return all(run.length == 1 if run.symbol == 1 else run.length <= 2 for run in word)


def classify_1and2(word: RunLengthWord) -> Classification:
    if not fits_1and2_shape(word):
        raise CharacterizationError("expected single 1s separated by zero runs of length at most 2")
    _require_even(word)
    if word.symbols == (1, 0, 1) and word.lengths == (1, 2, 1):
        return Classification(False, Rule.ONE_AND_TWO, "1001 is the only exception")
    return Classification(True, Rule.ONE_AND_TWO, "single 1s with zero runs of length at most 2, other than 1001")


def fits_ths1_shape(word: RunLengthWord) -> bool:
    if not set(word.symbols) <= {0, 1}:
        return False
    return all(run.length == 2 if run.symbol == 0 else run.length <= 2 for run in word)


def is_odd_abba(word: RunLengthWord) -> bool:
    """``(1001)^n`` with ``n`` odd."""

    lengths = word.lengths
    if not word.runs or word.symbols[0] != 1 or len(lengths) % 4 != 3:
        return False
    return (
        lengths[0] == 1
        and lengths[-1] == 1
        and all(length == 2 for length in lengths[1:-1])
        and set(word.symbols) == {0, 1}
    )
