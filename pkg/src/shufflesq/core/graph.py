"""Ordered multigraphs with capacities, nests and the twins correspondence."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, List, Optional, Tuple, Union

from .errors import GraphError
from .twins import Twins, is_canonical, validate
from .words import RunLengthWord, Word, runs


@dataclass(frozen=True, slots=True)
class Vertex:
    letter: int
    capacity: int


@dataclass(frozen=True, slots=True, order=True)
class Edge:
    p: int
    q: int
    mu: int = 1

    @property
    def is_loop(self) -> bool:
        return self.p == self.q


@dataclass(frozen=True, slots=True)
class NestWitness:
    outer: Edge
    inner: Edge


@dataclass(frozen=True, slots=True)
class OrderedMultigraph:
    """Vertices ``u_1 < ... < u_m`` in linear order; edges carry multiplicities."""

    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        m = len(self.vertices)
        for vertex in self.vertices:
            if vertex.capacity < 1:
                raise GraphError(f"vertex capacity must be positive, got {vertex.capacity}")
        for edge in self.edges:
            if not 0 <= edge.p <= edge.q < m:
                raise GraphError(f"edge ({edge.p + 1}, {edge.q + 1}) outside vertices 1..{m}")
            if edge.mu < 1:
                raise GraphError(f"edge ({edge.p + 1}, {edge.q + 1}) has multiplicity {edge.mu}")
            if self.vertices[edge.p].letter != self.vertices[edge.q].letter:
                raise GraphError(f"edge ({edge.p + 1}, {edge.q + 1}) joins different letter classes")
        for index, degree in enumerate(self.degrees()):
            if degree > self.vertices[index].capacity:
                raise GraphError(
                    f"vertex u{index + 1} has degree {degree} above capacity {self.vertices[index].capacity}"
                )

    @classmethod
    def build(
        cls,
        vertices: Iterable[Vertex],
        edges: Iterable[Union[Edge, Tuple[int, int, int]]] = (),
    ) -> "OrderedMultigraph":
        """Normalise endpoints, merge parallel entries and sort edges."""

        merged: Counter = Counter()
        for item in edges:
            p, q, mu = (item.p, item.q, item.mu) if isinstance(item, Edge) else item
            if mu == 0:
                continue
            merged[(min(p, q), max(p, q))] += mu
        ordered = tuple(Edge(p, q, mu) for (p, q), mu in sorted(merged.items()))
        return cls(tuple(vertices), ordered)

    @classmethod
    def for_runs(cls, word: RunLengthWord, edges: Iterable[Union[Edge, Tuple[int, int, int]]] = ()) -> "OrderedMultigraph":
        return cls.build((Vertex(run.symbol, run.length) for run in word), edges)

    def right_degrees(self) -> List[int]:
        right = [0] * len(self.vertices)
        for edge in self.edges:
            right[edge.p] += edge.mu
        return right

    def left_degrees(self) -> List[int]:
        left = [0] * len(self.vertices)
        for edge in self.edges:
            left[edge.q] += edge.mu
        return left

    def degrees(self) -> List[int]:
        return [r + l for r, l in zip(self.right_degrees(), self.left_degrees())]

    def deficits(self) -> List[int]:
        return [vertex.capacity - degree for vertex, degree in zip(self.vertices, self.degrees())]

    @property
    def deficit(self) -> int:
        return sum(self.deficits())

    def is_perfect(self) -> bool:
        return self.deficit == 0

    def multiplicity(self, p: int, q: int) -> int:
        lo, hi = min(p, q), max(p, q)
        return sum(edge.mu for edge in self.edges if edge.p == lo and edge.q == hi)

    def loops(self) -> List[Edge]:
        return [edge for edge in self.edges if edge.is_loop]


def find_nest(graph: OrderedMultigraph) -> Optional[NestWitness]:
    """Return a pair of disjoint edges with one strictly inside the other, if any.

    Edges are swept by left endpoint while tracking the edge reaching furthest
    right among strictly smaller left endpoints.
    """

    best: Optional[Edge] = None
    for _, group in groupby(sorted(graph.edges), key=lambda edge: edge.p):
        batch = list(group)
        if best is not None:
            for edge in batch:
                if edge.q < best.q:
                    return NestWitness(outer=best, inner=edge)
        widest = max(batch, key=lambda edge: edge.q)
        if best is None or widest.q > best.q:
            best = widest
    return None


def graph_from_twins(tw: Twins) -> OrderedMultigraph:
    """Contract the matching ``{i_h, j_h}`` of canonical twins by runs."""

    if not is_canonical(tw):
        raise GraphError("graph_from_twins needs canonical twins; canonicalize first")
    view = runs(tw.word)
    run_of = view.run_of_position()
    counts: Counter = Counter()
    for i, j in tw.pairs:
        counts[(run_of[i], run_of[j])] += 1
    return OrderedMultigraph.for_runs(view, ((p, q, mu) for (p, q), mu in counts.items()))


def twins_from_graph(graph: OrderedMultigraph, word: Union[Word, RunLengthWord]) -> Twins:
    """Assign the first ``deg->`` positions of every run to X and the next ``deg<-`` to Y."""

    view = word if isinstance(word, RunLengthWord) else runs(word)
    if len(view) != len(graph.vertices):
        raise GraphError(f"graph has {len(graph.vertices)} vertices but the word has {len(view)} runs")
    for index, (vertex, run) in enumerate(zip(graph.vertices, view)):
        if vertex.letter != run.symbol:
            raise GraphError(f"vertex u{index + 1} has letter class {vertex.letter}, run has {run.symbol}")
        if vertex.capacity != run.length:
            raise GraphError(f"vertex u{index + 1} has capacity {vertex.capacity}, run has length {run.length}")
    witness = find_nest(graph)
    if witness is not None:
        raise GraphError(f"graph contains a nest: {_edge_text(witness.outer)} over {_edge_text(witness.inner)}")
    x: List[int] = []
    y: List[int] = []
    for start, right, left in zip(view.starts, graph.right_degrees(), graph.left_degrees()):
        x.extend(range(start, start + right))
        y.extend(range(start + right, start + right + left))
    tw = Twins.build(view.to_word(), x, y)
    check = validate(tw)
    if not check.ok:
        raise GraphError(f"graph does not decode into twins: {check.reason}")
    return tw


def _edge_text(edge: Edge) -> str:
    return f"u{edge.p + 1}u{edge.q + 1}"


def export_dot(graph: OrderedMultigraph, name: str = "G") -> str:
    """Deterministic DOT text; vertices keep their linear order left to right."""

    lines = [f"graph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for index, vertex in enumerate(graph.vertices):
        lines.append(f'  u{index + 1} [label="u{index + 1}\\n{vertex.letter}^{vertex.capacity}"];')
    if len(graph.vertices) > 1:
        chain = " -- ".join(f"u{index + 1}" for index in range(len(graph.vertices)))
        lines.append(f"  {chain} [style=invis];")
    for edge in graph.edges:
        lines.append(f'  u{edge.p + 1} -- u{edge.q + 1} [label="{edge.mu}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

