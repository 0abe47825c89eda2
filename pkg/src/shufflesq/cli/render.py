"""Rich renderables for words, twins and tables."""

from __future__ import annotations

from typing import Iterable

from rich.table import Table
from rich.text import Text

from ..core.records import CensusRow, GapCensusRow
from ..core.twins import Twins
from ..core.words import format_word

X_STYLE = "underline red"
Y_STYLE = "overline blue"
GAP_STYLE = "dim"


def twins_text(tw: Twins) -> Text:
    """The word with X underlined in red, Y overlined in blue and gaps dimmed."""

    xs, ys = set(tw.x), set(tw.y)
    text = Text()
    for index in range(len(tw.word)):
        style = X_STYLE if index in xs else Y_STYLE if index in ys else GAP_STYLE
        text.append(format_word(tw.word[index : index + 1]), style=style)
    return text


def census_table(rows: Iterable[CensusRow]) -> Table:
    table = Table(title="Shuffle squares by half-length")
    table.add_column("n", justify="right")
    table.add_column("k", justify="right")
    table.add_column("even words", justify="right")
    table.add_column("squares", justify="right")
    table.add_column("density", justify="right")
    for row in rows:
        table.add_row(str(row.n), str(row.k), str(row.even_words), str(row.squares), f"{row.density:.4f}")
    return table


def gap_table(rows: Iterable[GapCensusRow]) -> Table:
    table = Table(title="Largest gap count by length")
    table.add_column("length", justify="right")
    table.add_column("g", justify="right")
    table.add_column("witness")
    for row in rows:
        table.add_row(str(row.length), str(row.max_gaps), row.word)
    return table
