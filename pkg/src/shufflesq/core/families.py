"""Generators for the structured word families."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from .errors import FamilyError
from .words import RunLengthWord, Word


def alternating_word(lengths: Sequence[int]) -> Word:
    """``W(n_1, ..., n_r)``: runs of the given lengths starting with ``1``."""

    if any(length < 1 for length in lengths):
        raise FamilyError(f"run lengths must be positive, got {list(lengths)}")
    pairs = [(1 - index % 2, length) for index, length in enumerate(lengths)]
    return RunLengthWord.from_pairs(pairs, k=2).to_word()


def omr_word(m: int, r: int) -> Word:
    if m < 1 or m % 2 == 0:
        raise FamilyError(f"O(m, r) needs odd positive m, got {m}")
    if not 1 <= r <= (m + 1) // 2:
        raise FamilyError(f"O({m}, r) needs 1 <= r <= {(m + 1) // 2}, got {r}")
    return alternating_word([m - 2 * index for index in range(r)])


def a_word(r: int) -> Word:
    if r < 1:
        raise FamilyError(f"A(r) needs r >= 1, got {r}")
    return alternating_word([3 ** power for power in range(r - 1, -1, -1)])


def b_word(r: int) -> Word:
    if r < 1:
        raise FamilyError(f"B(r) needs r >= 1, got {r}")
    return alternating_word([step * r + 1 for step in range(r, 0, -1)])


def abba_block(r: int, count: int) -> Word:
    """``(1 0^r 1)^count``."""

    if r < 1 or count < 1:
        raise FamilyError(f"abba block needs r >= 1 and count >= 1, got ({r}, {count})")
    block = (1,) + (0,) * r + (1,)
    return Word(block * count, 2)


def separated_ones(zeros: Sequence[int]) -> Word:
    """``0^{a_0} 1 0^{a_1} 1 ... 1 0^{a_2m}``."""

    if len(zeros) < 3 or len(zeros) % 2 == 0:
        raise FamilyError(f"separated ones needs an odd number (>= 3) of zero counts, got {len(zeros)}")
    if any(value < 0 for value in zeros):
        raise FamilyError("zero counts must be non-negative")
    symbols: List[int] = []
    for index, value in enumerate(zeros):
        if index:
            symbols.append(1)
        symbols.extend([0] * value)
    return Word(tuple(symbols), 2)


def thue_morse_prefix(length: int) -> Word:
    if length < 0:
        raise FamilyError("prefix length must be non-negative")
    return Word(tuple(index.bit_count() % 2 for index in range(length)), 2)


def kolakoski_prefix(length: int) -> Word:
    """Prefix of the Kolakoski sequence over ``{1, 2}``."""

    if length < 0:
        raise FamilyError("prefix length must be non-negative")
    sequence = [1, 2, 2]
    cursor = 2
    while len(sequence) < length:
        symbol = 1 if sequence[-1] == 2 else 2
        sequence.extend([symbol] * sequence[cursor])
        cursor += 1
    return Word(tuple(sequence[:length]), 3)


def even_prefixes(generator: Callable[[int], Word], max_len: int) -> List[int]:
    """Lengths ``0..max_len`` whose prefix is an even word (0 always included)."""

    if max_len < 0:
        raise FamilyError("max_len must be non-negative")
    prefix = generator(max_len)
    counts: Counter = Counter()
    lengths = [0]
    for index, symbol in enumerate(prefix.symbols, start=1):
        counts[symbol] += 1
        if all(value % 2 == 0 for value in counts.values()):
            lengths.append(index)
    return lengths


@dataclass(frozen=True, slots=True)
class FamilySpec:
    """A family name plus its integer parameters, e.g. ``O 47 24``."""

    name: str
    params: Tuple[int, ...]

    @classmethod
    def parse(cls, name: str, args: Sequence[str]) -> "FamilySpec":
        key = _ALIASES.get(name.lower(), name.lower())
        if key not in _BUILDERS:
            known = ", ".join(sorted(_BUILDERS))
            raise FamilyError(f"unknown family {name!r}; expected one of {known}")
        try:
            params = tuple(int(arg) for arg in args)
        except ValueError as exc:
            raise FamilyError(f"family parameters must be integers: {exc}") from None
        return cls(key, params)

    def __str__(self) -> str:
        return " ".join([self.name, *map(str, self.params)])


def _fixed(arity: int, builder: Callable[..., Word]) -> Callable[[Tuple[int, ...]], Word]:
    def build(params: Tuple[int, ...]) -> Word:
        if len(params) != arity:
            raise FamilyError(f"expected {arity} parameter(s), got {len(params)}")
        return builder(*params)

    return build


_BUILDERS: Dict[str, Callable[[Tuple[int, ...]], Word]] = {
    "o": _fixed(2, omr_word),
    "a": _fixed(1, a_word),
    "b": _fixed(1, b_word),
    "abba": _fixed(2, abba_block),
    "separated-ones": separated_ones,
    "w": alternating_word,
    "thue-morse": _fixed(1, thue_morse_prefix),
    "kolakoski": _fixed(1, kolakoski_prefix),
}

_ALIASES = {
    "omr": "o",
    "sep": "separated-ones",
    "tm": "thue-morse",
    "thue_morse": "thue-morse",
}

PREFIX_FAMILIES: Dict[str, Callable[[int], Word]] = {
    "thue-morse": thue_morse_prefix,
    "kolakoski": kolakoski_prefix,
}


def generate(spec: FamilySpec) -> Word:
    builder = _BUILDERS.get(spec.name)
    if builder is None:
        raise FamilyError(f"unknown family {spec.name!r}")
    return builder(spec.params)
