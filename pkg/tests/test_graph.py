from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shufflesq.core.errors import GraphError
from shufflesq.core.graph import (
    Edge,
    NestWitness,
    OrderedMultigraph,
    Vertex,
    export_dot,
    find_nest,
    graph_from_twins,
    twins_from_graph,
)
from shufflesq.core.twins import Twins, canonicalize, is_canonical, validate
from shufflesq.core.words import parse_word, runs


def _plain(n: int, edges) -> OrderedMultigraph:
    return OrderedMultigraph.build([Vertex(0, 20) for _ in range(n)], [(p, q, 1) for p, q in edges])


def _has_nest_brute(graph: OrderedMultigraph) -> bool:
    for outer in graph.edges:
        for inner in graph.edges:
            disjoint = not {outer.p, outer.q} & {inner.p, inner.q}
            if disjoint and outer.p < inner.p and inner.q < outer.q:
                return True
    return False


def test_find_nest_examples():
    assert find_nest(_plain(4, [(0, 3), (1, 2)])) == NestWitness(outer=Edge(0, 3, 1), inner=Edge(1, 2, 1))
    assert find_nest(_plain(4, [(0, 2), (1, 3)])) is None
    assert find_nest(_plain(4, [(0, 3), (0, 2)])) is None
    assert find_nest(_plain(4, [(0, 3), (1, 3)])) is None
    assert find_nest(_plain(3, [(0, 2), (1, 1)])) is not None
    assert find_nest(_plain(3, [(0, 2), (0, 0), (2, 2)])) is None


@pytest.mark.property_based
@settings(max_examples=300, deadline=None)
@given(
    st.integers(min_value=1, max_value=7).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(
                st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                max_size=8,
            ),
        )
    )
)
def test_find_nest_matches_brute_force(case):
    n, pairs = case
    graph = _plain(n, pairs)

    assert (find_nest(graph) is not None) == _has_nest_brute(graph)


def test_graph_rejects_cross_letter_edges_and_overfull_vertices():
    with pytest.raises(GraphError):
        OrderedMultigraph.build([Vertex(0, 2), Vertex(1, 2)], [(0, 1, 1)])
    with pytest.raises(GraphError):
        OrderedMultigraph.build([Vertex(0, 1), Vertex(0, 2)], [(0, 1, 2)])
    with pytest.raises(GraphError):
        OrderedMultigraph.build([Vertex(0, 1)], [(0, 3, 1)])


def test_degrees_count_loops_twice():
    graph = OrderedMultigraph.build([Vertex(1, 3), Vertex(0, 2)], [(0, 0, 1)])

    assert graph.degrees() == [2, 0]
    assert graph.deficits() == [1, 2]
    assert graph.deficit == 3


def test_graph_from_canonical_small_example():
    word = parse_word("111001000110")
    tw = canonicalize(Twins.from_one_based(word, [1, 6, 8, 9, 12], [2, 3, 4, 5, 7]))

    graph = graph_from_twins(tw)

    assert [(e.p, e.q, e.mu) for e in graph.edges] == [(0, 0, 1), (0, 2, 1), (1, 3, 2), (3, 5, 1)]
    assert graph.deficits() == [0, 0, 0, 0, 2, 0]
    assert find_nest(graph) is None
    assert twins_from_graph(graph, word) == tw


def test_graph_from_twins_needs_canonical_input():
    word = parse_word("111001000110")

    with pytest.raises(GraphError):
        graph_from_twins(Twins.from_one_based(word, [1, 6, 8, 9, 12], [2, 3, 4, 5, 7]))


def test_ternary_graph_with_gaps():
    word = parse_word("111223331223")
    graph = OrderedMultigraph.for_runs(runs(word), [(0, 0, 1), (0, 3, 1), (1, 4, 2), (2, 5, 1)])

    tw = twins_from_graph(graph, word)

    assert validate(tw).ok
    assert tw.x_word().text == "11223"
    assert tw.length == 5
    assert len(tw.gaps) == 2
    assert graph.deficits()[2] == 2
    assert graph_from_twins(tw) == graph


def test_four_run_certificate_decodes_to_half_word():
    word = parse_word("1^3 0 1 0^3")
    graph = OrderedMultigraph.for_runs(runs(word), [(0, 2, 1), (1, 3, 1), (0, 0, 1), (3, 3, 1)])

    tw = twins_from_graph(graph, word)

    assert tw.is_perfect()
    assert tw.x_word().text == "1100"
    assert tw.y_word().text == "1100"


def test_twins_from_graph_checks_runs_and_nests():
    word = parse_word("1^3 0 1 0^3")
    nested = OrderedMultigraph.for_runs(runs(parse_word("1 0^2 1")), [(0, 2, 1), (1, 1, 1)])

    with pytest.raises(GraphError):
        twins_from_graph(nested, parse_word("1 0^2 1"))
    with pytest.raises(GraphError):
        twins_from_graph(nested, word)


def test_large_twins_round_trip():
    word = parse_word("1^2 0^5 1 0^6 1^3 0^4 1^2 0^7")
    x = [1, 3, 4, 5, 6, 7, 8, 9, 15, 16, 18, 19, 20, 24, 25]
    y = [2, 10, 11, 12, 13, 14, 17, 21, 22, 23, 26, 27, 28, 29, 30]
    tw = Twins.from_one_based(word, x, y)

    assert validate(tw).ok
    assert tw.is_perfect()
    assert tw.x_word().text == parse_word("1 0^5 1 0 1^2 0^5").text
    canonical = canonicalize(tw)
    graph = graph_from_twins(canonical)
    assert graph.is_perfect()
    assert find_nest(graph) is None
    assert twins_from_graph(graph, word) == canonical


def test_export_dot_is_deterministic():
    word = parse_word("1^3 0 1 0^3")
    graph = OrderedMultigraph.for_runs(runs(word), [(0, 2, 1), (1, 3, 1), (0, 0, 1), (3, 3, 1)])

    text = export_dot(graph)

    assert text == export_dot(graph)
    assert text.startswith("graph G {")
    assert 'u1 [label="u1\\n1^3"];' in text
    assert 'u2 -- u4 [label="1"];' in text
    assert 'u1 -- u1 [label="1"];' in text
    assert text.endswith("}\n")


def _path_cycle_graphs(n: int):
    """Every path from the first to the last vertex plus a disjoint cycle covering the rest."""

    inner = range(1, n - 1)
    for size in range(3, n - 1):
        for cycle in combinations(inner, size):
            rest = [v for v in inner if v not in cycle]
            first, *others = cycle
            for tail in permutations(others):
                if tail[0] > tail[-1]:
                    continue
                ring = (first, *tail)
                cycle_edges = list(zip(ring, ring[1:] + ring[:1]))
                for middle in permutations(rest):
                    walk = (0, *middle, n - 1)
                    yield size, _plain(n, list(zip(walk, walk[1:])) + cycle_edges)


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_nest_free_path_plus_cycle_has_even_cycle(n):
    checked = 0
    for size, graph in _path_cycle_graphs(n):
        checked += 1
        if find_nest(graph) is None:
            assert size % 2 == 0
    assert checked


@pytest.mark.slow
def test_nest_free_path_plus_cycle_has_even_cycle_ten_vertices():
    for size, graph in _path_cycle_graphs(10):
        if find_nest(graph) is None:
            assert size % 2 == 0


def test_canonical_twins_and_graphs_correspond_on_small_words():
    word = parse_word("1^2 0 1^2 0^3")
    tw = canonicalize(Twins.from_one_based(word, [1, 3, 6], [2, 7, 8]))

    graph = graph_from_twins(tw)

    assert is_canonical(tw)
    assert twins_from_graph(graph, word) == tw
