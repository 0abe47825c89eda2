"""Twins: validation, monotonization, rewiring, shifting and canonical form."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .errors import TwinsError
from .words import Word, runs


@dataclass(frozen=True, slots=True)
class Twins:
    """Supports ``i_1 < ... < i_t`` (X) and ``j_1 < ... < j_t`` (Y) in ``word``."""

    word: Word
    x: Tuple[int, ...]
    y: Tuple[int, ...]

    @classmethod
    def build(cls, word: Word, x: Iterable[int], y: Iterable[int]) -> "Twins":
        return cls(word, tuple(sorted(x)), tuple(sorted(y)))

    @classmethod
    def from_one_based(cls, word: Word, x: Iterable[int], y: Iterable[int]) -> "Twins":
        return cls.build(word, (index - 1 for index in x), (index - 1 for index in y))

    @classmethod
    def empty(cls, word: Word) -> "Twins":
        return cls(word, (), ())

    @property
    def length(self) -> int:
        return len(self.x)

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return list(zip(self.x, self.y))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self.x + self.y))

    @property
    def gaps(self) -> Tuple[int, ...]:
        used = set(self.x) | set(self.y)
        return tuple(index for index in range(len(self.word)) if index not in used)

    def x_word(self) -> Word:
        return Word(tuple(self.word[index] for index in self.x), self.word.k)

    def y_word(self) -> Word:
        return Word(tuple(self.word[index] for index in self.y), self.word.k)

    def is_perfect(self) -> bool:
        return 2 * self.length == len(self.word)

    def to_text(self) -> str:
        """Plain ``X:{...} Y:{...}`` form with 1-based positions."""

        xs = ",".join(str(index + 1) for index in self.x)
        ys = ",".join(str(index + 1) for index in self.y)
        return f"X:{{{xs}}} Y:{{{ys}}}"


@dataclass(frozen=True, slots=True)
class TwinsCheck:
    ok: bool
    reason: Optional[str] = None
    index: Optional[int] = None


def validate(tw: Twins) -> TwinsCheck:
    """Check every twins invariant and report the first violation."""

    n = len(tw.word)
    if len(tw.x) != len(tw.y):
        return TwinsCheck(False, f"supports differ in size ({len(tw.x)} vs {len(tw.y)})")
    for label, support in (("X", tw.x), ("Y", tw.y)):
        for h, index in enumerate(support):
            if not 0 <= index < n:
                return TwinsCheck(False, f"{label} position {index + 1} outside word of length {n}", h)
            if h and support[h - 1] >= index:
                return TwinsCheck(False, f"{label} support not strictly increasing at h={h + 1}", h)
    overlap = sorted(set(tw.x) & set(tw.y))
    if overlap:
        return TwinsCheck(False, f"supports overlap at position {overlap[0] + 1}")
    for h, (i, j) in enumerate(tw.pairs):
        if tw.word[i] != tw.word[j]:
            return TwinsCheck(False, f"letters differ at h={h + 1} (positions {i + 1} and {j + 1})", h)
    return TwinsCheck(True)


def require_valid(tw: Twins) -> None:
    check = validate(tw)
    if not check.ok:
        raise TwinsError(check.reason or "invalid twins", check.index)


def is_monotone(tw: Twins) -> bool:
    return all(i < j for i, j in tw.pairs)


def monotonize(tw: Twins) -> Twins:
    """Swap every aligned pair with ``i_h > j_h``."""

    x = [min(i, j) for i, j in tw.pairs]
    y = [max(i, j) for i, j in tw.pairs]
    return Twins.build(tw.word, x, y)


def rewire(tw: Twins, g: int, h: int) -> Twins:
    """The ``(g, h)``-rewiring, 0-based: ``j_g`` joins X and ``i_h`` joins Y."""

    if not is_monotone(tw):
        raise TwinsError("rewiring is only defined for monotone twins")
    t = tw.length
    if not (0 <= g < h < t):
        raise TwinsError(f"rewiring needs 0 <= g < h < {t}, got g={g}, h={h}", h)
    j_g, i_h = tw.y[g], tw.x[h]
    if not j_g < i_h:
        raise TwinsError(f"rewiring needs j_g < i_h, got {j_g + 1} >= {i_h + 1}", h)
    if tw.word[j_g] != tw.word[i_h]:
        raise TwinsError(f"rewiring needs equal letters at {j_g + 1} and {i_h + 1}", h)
    support = tw.support
    if bisect_right(support, j_g) != support.index(i_h):
        raise TwinsError(f"support element strictly between {j_g + 1} and {i_h + 1}", h)
    x = [index for index in tw.x if index != i_h] + [j_g]
    y = [index for index in tw.y if index != j_g] + [i_h]
    return Twins.build(tw.word, x, y)


def applicable_rewirings(tw: Twins) -> List[Tuple[int, int]]:
    """All ``(g, h)`` with ``j_g`` directly followed by ``i_h`` in the support."""

    x_rank = {index: h for h, index in enumerate(tw.x)}
    y_rank = {index: g for g, index in enumerate(tw.y)}
    support = tw.support
    found = []
    for left, right in zip(support, support[1:]):
        if left in y_rank and right in x_rank and tw.word[left] == tw.word[right]:
            g, h = y_rank[left], x_rank[right]
            if g < h:
                found.append((g, h))
    return sorted(found)


def shift(tw: Twins) -> Twins:
    """Move every gap to the right end of its run."""

    roles = {index: "x" for index in tw.x}
    roles.update({index: "y" for index in tw.y})
    view = runs(tw.word)
    x: List[int] = []
    y: List[int] = []
    for start, run in zip(view.starts, view):
        packed = [roles[index] for index in range(start, start + run.length) if index in roles]
        for offset, role in enumerate(packed):
            (x if role == "x" else y).append(start + offset)
    return Twins.build(tw.word, x, y)


def canonicalize(tw: Twins) -> Twins:
    """Monotonize, then alternate exhaustive rewiring and shifting to a fixed point."""

    require_valid(tw)
    current = monotonize(tw)
    while True:
        options = applicable_rewirings(current)
        if options:
            current = rewire(current, *options[0])
            continue
        shifted = shift(current)
        if shifted == current:
            return current
        current = monotonize(shifted)


def is_canonical(tw: Twins) -> bool:
    if not validate(tw).ok or not is_monotone(tw):
        return False
    xs, ys = set(tw.x), set(tw.y)
    view = runs(tw.word)
    for start, run in zip(view.starts, view):
        stage = 0
        for index in range(start, start + run.length):
            role = 0 if index in xs else 1 if index in ys else 2
            if role < stage:
                return False
            stage = role
    return True
