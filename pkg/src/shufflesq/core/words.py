"""Words, run-length encoding and text formats."""

from __future__ import annotations

import re
import string
from collections import Counter
from dataclasses import dataclass
from itertools import accumulate, groupby
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union, overload

from .errors import WordParseError
from .models import OutputFormat

_LOWER_OFFSET = 10
_RUN_TOKEN = re.compile(r"^([0-9A-Za-z]*?)([0-9A-Za-z])(?:\^(\d+))?$")


class Run(NamedTuple):
    symbol: int
    length: int


@dataclass(frozen=True, slots=True)
class Word:
    """A finite word over the alphabet ``{0, ..., k-1}``."""

    symbols: Tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise WordParseError(f"alphabet size must be positive, got {self.k}")
        for position, symbol in enumerate(self.symbols):
            if not 0 <= symbol < self.k:
                raise WordParseError(f"symbol {symbol} at position {position + 1} outside alphabet of size {self.k}")

    @classmethod
    def of(cls, symbols: Iterable[int], k: Optional[int] = None) -> "Word":
        values = tuple(int(symbol) for symbol in symbols)
        size = k if k is not None else max(values, default=-1) + 1
        return cls(values, max(size, 1))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    @overload
    def __getitem__(self, index: int) -> int: ...

    @overload
    def __getitem__(self, index: slice) -> "Word": ...

    def __getitem__(self, index: Union[int, slice]) -> Union[int, "Word"]:
        if isinstance(index, slice):
            return Word(self.symbols[index], self.k)
        return self.symbols[index]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.symbols + other.symbols, max(self.k, other.k))

    def counts(self) -> Counter:
        return Counter(self.symbols)

    @property
    def text(self) -> str:
        return format_word(self, OutputFormat.DENSE)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True, slots=True)
class RunLengthWord:
    """Run-length view ``U_1 ... U_m`` of a word."""

    runs: Tuple[Run, ...]
    k: int

    def __post_init__(self) -> None:
        for index, run in enumerate(self.runs):
            if run.length < 1:
                raise WordParseError(f"run {index + 1} has non-positive length {run.length}")
            if not 0 <= run.symbol < self.k:
                raise WordParseError(f"run {index + 1} uses symbol {run.symbol} outside alphabet of size {self.k}")
            if index and self.runs[index - 1].symbol == run.symbol:
                raise WordParseError(f"runs {index} and {index + 1} share symbol {run.symbol}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]], k: Optional[int] = None) -> "RunLengthWord":
        runs = tuple(Run(int(symbol), int(length)) for symbol, length in pairs)
        size = k if k is not None else max((run.symbol for run in runs), default=-1) + 1
        return cls(runs, max(size, 1))

    def __len__(self) -> int:
        return len(self.runs)

    def __iter__(self) -> Iterator[Run]:
        return iter(self.runs)

    def __getitem__(self, index: int) -> Run:
        return self.runs[index]

    @property
    def symbols(self) -> Tuple[int, ...]:
        return tuple(run.symbol for run in self.runs)

    @property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(run.length for run in self.runs)

    @property
    def total_length(self) -> int:
        return sum(self.lengths)

    @property
    def starts(self) -> Tuple[int, ...]:
        """0-based position of the first letter of every run."""

        return tuple(accumulate(self.lengths, initial=0))[:-1]

    def run_of_position(self) -> Tuple[int, ...]:
        return tuple(index for index, run in enumerate(self.runs) for _ in range(run.length))

    def to_word(self) -> Word:
        return Word(tuple(run.symbol for run in self.runs for _ in range(run.length)), self.k)

    def __str__(self) -> str:
        return format_runs(self)


def runs(word: Word) -> RunLengthWord:
    """Maximal blocks of equal symbols, in order."""

    pairs = [Run(symbol, sum(1 for _ in group)) for symbol, group in groupby(word.symbols)]
    return RunLengthWord(tuple(pairs), word.k)


def is_even(word: Union[Word, RunLengthWord]) -> bool:
    if isinstance(word, RunLengthWord):
        totals: Counter = Counter()
        for run in word:
            totals[run.symbol] += run.length
        return all(count % 2 == 0 for count in totals.values())
    return all(count % 2 == 0 for count in word.counts().values())


def is_dull(word: Union[Word, RunLengthWord]) -> bool:
    """Every run has even length."""

    view = word if isinstance(word, RunLengthWord) else runs(word)
    return all(run.length % 2 == 0 for run in view)


def rotate(word: Word, offset: int) -> Word:
    if not 0 <= offset <= len(word):
        raise ValueError(f"rotation offset {offset} outside 0..{len(word)}")
    return Word(word.symbols[offset:] + word.symbols[:offset], word.k)


def rotate_runs(word: RunLengthWord, count: int) -> Word:
    """Rotate so that the word starts at run ``count``."""

    if not 0 <= count <= len(word):
        raise ValueError(f"run offset {count} outside 0..{len(word)}")
    return rotate(word.to_word(), sum(word.lengths[:count]))


def relabel(word: Word, mapping: Sequence[int]) -> Word:
    return Word.of((mapping[symbol] for symbol in word.symbols), max(mapping, default=0) + 1)


def concat(words: Iterable[Word]) -> Word:
    parts = list(words)
    symbols = tuple(symbol for part in parts for symbol in part.symbols)
    return Word.of(symbols, max((part.k for part in parts), default=1))


# ----------------------------------------------------------------- text I/O


def _symbol_value(char: str) -> Tuple[str, int]:
    if char.isdigit():
        return "digit", int(char)
    if char in string.ascii_uppercase:
        return "upper", ord(char) - ord("A")
    if char in string.ascii_lowercase:
        return "digit", ord(char) - ord("a") + _LOWER_OFFSET
    raise WordParseError(f"unsupported symbol {char!r}")


def _symbol_char(symbol: int) -> str:
    if symbol < _LOWER_OFFSET:
        return str(symbol)
    if symbol < _LOWER_OFFSET + 26:
        return chr(ord("a") + symbol - _LOWER_OFFSET)
    raise WordParseError(f"symbol {symbol} has no text form")


def parse_word(text: str, *, k: Optional[int] = None, line: Optional[int] = None) -> Word:
    """Parse a dense (``100110``) or run-length (``1^2 0^2 1 0``) word.

    Run-length input is recognised by a caret or interior whitespace. Tokens
    may carry a dense prefix, so ``10^5`` reads as ``1 0^5``. Digits and the
    uppercase letters used for binary words (``A`` = 0, ``B`` = 1) may not be
    mixed.
    """

    stripped = text.strip()
    symbols: List[int] = []
    kinds = set()
    try:
        if "^" in stripped or any(char.isspace() for char in stripped):
            for token in stripped.split():
                match = _RUN_TOKEN.match(token)
                if match is None:
                    raise WordParseError(f"malformed run token {token!r}")
                prefix, char, exponent = match.groups()
                for item in prefix:
                    kind, value = _symbol_value(item)
                    kinds.add(kind)
                    symbols.append(value)
                kind, value = _symbol_value(char)
                kinds.add(kind)
                repeat = int(exponent) if exponent is not None else 1
                if repeat < 1:
                    raise WordParseError(f"run token {token!r} has exponent below 1")
                symbols.extend([value] * repeat)
        else:
            for char in stripped:
                kind, value = _symbol_value(char)
                kinds.add(kind)
                symbols.append(value)
    except WordParseError as exc:
        if line is not None and exc.line is None:
            raise WordParseError(str(exc), line=line) from None
        raise
    if len(kinds) > 1:
        raise WordParseError("digits and letters cannot be mixed in one word", line=line)
    try:
        return Word.of(symbols, k)
    except WordParseError as exc:
        raise WordParseError(str(exc), line=line) from None


def format_runs(word: RunLengthWord) -> str:
    tokens = []
    for run in word:
        char = _symbol_char(run.symbol)
        tokens.append(char if run.length == 1 else f"{char}^{run.length}")
    return " ".join(tokens)


def format_word(word: Word, style: OutputFormat = OutputFormat.DENSE) -> str:
    if style == OutputFormat.RUNLENGTH:
        return format_runs(runs(word))
    return "".join(_symbol_char(symbol) for symbol in word.symbols)


def read_words(lines: Iterable[str]) -> Iterator[Tuple[int, Word]]:
    """Yield ``(line_number, word)`` from a word file; ``#`` starts a comment."""

    for number, raw in enumerate(lines, start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        yield number, parse_word(content, line=number)
