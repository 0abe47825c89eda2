"""Position-level reference procedures used to cross-check the run-level search.

Both shuffle oracles track the overhang: the part of the leading copy that the
trailing copy has not matched yet. A letter either extends the leader or, when
it equals the front of the overhang, advances the follower.
"""

from __future__ import annotations

import logging
from collections import Counter
from typing import Dict, Set, Tuple

from ..core.errors import BudgetExceeded
from ..core.words import Word, is_even

logger = logging.getLogger(__name__)

Overhang = Tuple[int, ...]


def _check_length(word: Word, limit: int, label: str) -> None:
    if len(word) > limit:
        raise BudgetExceeded(len(word), limit, f"{label} accepts words up to length {limit}, got {len(word)}")


def _suffix_counts(word: Word) -> list:
    """``counts[p]`` holds the letter counts of ``word[p:]``."""

    counts = [Counter() for _ in range(len(word) + 1)]
    for position in range(len(word) - 1, -1, -1):
        counts[position] = counts[position + 1].copy()
        counts[position][word[position]] += 1
    return counts


def _keeps_parity(overhang: Overhang, later: Counter) -> bool:
    for letter in set(overhang):
        pending = overhang.count(letter)
        if pending > later[letter] or (later[letter] - pending) % 2:
            return False
    return True


def oracle_shuffle_square(word: Word, max_length: int = 40) -> bool:
    """True iff ``word`` is a shuffle of two copies of one word."""

    _check_length(word, max_length, "shuffle-square oracle")
    if len(word) % 2 or not is_even(word):
        return False
    later = _suffix_counts(word)
    states: Set[Overhang] = {()}
    for position, letter in enumerate(word):
        following: Set[Overhang] = set()
        rest = later[position + 1]
        for overhang in states:
            extended = overhang + (letter,)
            if _keeps_parity(extended, rest):
                following.add(extended)
            if overhang and overhang[0] == letter and _keeps_parity(overhang[1:], rest):
                following.add(overhang[1:])
        states = following
        if not states:
            return False
    return () in states


def oracle_longest_twins(word: Word, max_length: int = 20) -> int:
    """Length of the longest twins, with a skip action for gaps."""

    _check_length(word, max_length, "longest-twins oracle")
    later = _suffix_counts(word)
    best: Dict[Overhang, int] = {(): 0}
    for position, letter in enumerate(word):
        rest = later[position + 1]
        following: Dict[Overhang, int] = {}

        def offer(overhang: Overhang, value: int) -> None:
            if value > following.get(overhang, -1):
                following[overhang] = value

        for overhang, value in best.items():
            offer(overhang, value)
            extended = overhang + (letter,)
            if extended.count(letter) <= rest[letter]:
                offer(extended, value)
            if overhang and overhang[0] == letter:
                offer(overhang[1:], value + 1)
        best = following
    return best.get((), 0)


def decide_reverse_shuffle_square(word: Word, max_length: int = 26) -> bool:
    """True iff the positions split into ``S`` and its complement with
    ``word[S]`` equal to the reversal of the complement's subword.

    Scanning left to right, letters assigned to ``S`` spell ``X`` from the
    front while letters of the complement spell ``X`` from the back; a state
    is the pair of partial spellings, checked where they overlap.
    """

    _check_length(word, max_length, "reverse-square search")
    n = len(word)
    if n % 2 or not is_even(word):
        return False
    half = n // 2
    states: Set[Tuple[Overhang, Overhang]] = {((), ())}
    for letter in word:
        following: Set[Tuple[Overhang, Overhang]] = set()
        for front, back in states:
            index = len(front)
            if index < half:
                mirror = half - 1 - index
                if mirror >= len(back) or back[mirror] == letter:
                    following.add((front + (letter,), back))
            index = len(back)
            if index < half:
                mirror = half - 1 - index
                if mirror >= len(front) or front[mirror] == letter:
                    following.add((front, back + (letter,)))
        states = following
        if not states:
            return False
    logger.debug("reverse-square search finished with %d states", len(states))
    return bool(states)
