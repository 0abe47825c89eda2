"""Certificate integrity checks."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import List, Union

from ..core.errors import GraphError
from ..core.graph import OrderedMultigraph, find_nest, twins_from_graph
from ..core.records import GraphPayload
from ..core.words import RunLengthWord, Word, runs


@dataclass(slots=True)
class IntegrityReport:
    """Represents the outcome of a certificate check."""

    ok: bool
    digest: str
    issues: List[str] = field(default_factory=list)


def graph_digest(graph: OrderedMultigraph) -> str:
    """SHA-256 of the canonical JSON form; stable across runs."""

    data = GraphPayload.from_graph(graph).canonical_json().encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def verify_certificate(word: Union[Word, RunLengthWord], graph: OrderedMultigraph) -> IntegrityReport:
    """Check that ``graph`` proves ``word`` is a shuffle square.

    Vertices must match the runs, every degree must equal its capacity, the
    graph must be nest-free and the decoded twins must cover the word.
    """

    view = word if isinstance(word, RunLengthWord) else runs(word)
    issues: List[str] = []
    if len(view) != len(graph.vertices):
        issues.append(f"graph has {len(graph.vertices)} vertices, word has {len(view)} runs")
    else:
        for index, (vertex, run) in enumerate(zip(graph.vertices, view)):
            if (vertex.letter, vertex.capacity) != (run.symbol, run.length):
                issues.append(f"vertex u{index + 1} does not match run {index + 1}")
    for index, deficit in enumerate(graph.deficits()):
        if deficit:
            issues.append(f"vertex u{index + 1} has degree below capacity by {deficit}")
    witness = find_nest(graph)
    if witness is not None:
        outer, inner = witness.outer, witness.inner
        issues.append(f"nest: u{outer.p + 1}u{outer.q + 1} over u{inner.p + 1}u{inner.q + 1}")
    if not issues:
        try:
            tw = twins_from_graph(graph, view)
        except GraphError as exc:
            issues.append(str(exc))
        else:
            if not tw.is_perfect():
                issues.append(f"twins leave {len(tw.gaps)} gap(s)")
            elif tw.x_word() != tw.y_word():
                issues.append("decoded twins spell different words")
    return IntegrityReport(ok=not issues, digest=graph_digest(graph), issues=issues)
