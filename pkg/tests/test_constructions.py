from itertools import product

import pytest

from shufflesq.core.errors import CharacterizationError
from shufflesq.core.graph import export_dot, find_nest
from shufflesq.core.models import Rule
from shufflesq.core.twins import validate
from shufflesq.core.words import RunLengthWord, is_even, parse_word, runs
from shufflesq.services import constructions
from shufflesq.services.constructions import (
    OMR_MAX_GAPS,
    SeparatedOnesInstance,
    alternating_twins_from_solution,
    build_omr_twins,
    build_ths1_certificate,
    omr_deficits,
    solve_separated_ones,
)
from shufflesq.services.oracle import oracle_shuffle_square
from shufflesq.services.solver import ShuffleSolver
from shufflesq.utils.integrity import verify_certificate


# ------------------------------------------------------------ separated ones


def test_four_solutions_for_four_ones():
    instance = SeparatedOnesInstance((0, 3, 9, 11, 7))

    solutions = solve_separated_ones(instance)

    assert instance.word().symbols == parse_word("1 0^3 1 0^9 1 0^11 1 0^7").symbols
    assert sorted(solution.right[3] for solution in solutions) == [1, 3, 5, 7]
    assert all(solution.right[1] == 3 for solution in solutions)
    assert sorted((s.right[2], s.right[4]) for s in solutions) == [(5, 0), (6, 1), (7, 2), (8, 3)]


def test_solution_twins_for_ten_ones():
    instance = SeparatedOnesInstance((0, 5, 3, 4, 0, 0, 6, 0, 0, 4, 4))

    solutions = solve_separated_ones(instance)
    match = [s for s in solutions if s.right == (0, 5, 1, 0, 0, 0, 3, 0, 0, 4, 0)]

    assert match
    tw = match[0].twins()
    assert tw.is_perfect()
    assert tw.x_word().symbols == parse_word("1 0^6 1 1 0^3 1 1 0^4").symbols
    assert match[0].left == (0, 0, 2, 4, 0, 0, 3, 0, 0, 0, 4)


def test_every_solution_decodes_to_perfect_twins():
    instance = SeparatedOnesInstance((1, 2, 3, 2, 4, 1, 3))

    for solution in solve_separated_ones(instance):
        tw = alternating_twins_from_solution(solution)
        assert validate(tw).ok
        assert tw.is_perfect()


def test_separated_ones_preconditions():
    with pytest.raises(CharacterizationError):
        SeparatedOnesInstance((1, 2))
    with pytest.raises(CharacterizationError):
        SeparatedOnesInstance((1, -2, 3))
    with pytest.raises(CharacterizationError):
        solve_separated_ones(SeparatedOnesInstance((1, 2, 1)))
    with pytest.raises(CharacterizationError):
        SeparatedOnesInstance.from_word(parse_word("0100"))


def test_instance_from_word():
    instance = SeparatedOnesInstance.from_word(parse_word("0^2 1^2 0^3 1 0 1"))

    assert instance.zeros == (2, 0, 3, 1, 0)
    assert instance.m == 2


def _separated_instances(m: int, max_zeros: int):
    for zeros in product(range(max_zeros + 1), repeat=2 * m + 1):
        if sum(zeros) % 2 == 0:
            yield SeparatedOnesInstance(zeros)


def test_solutions_imply_squares():
    for instance in _separated_instances(2, 3):
        if solve_separated_ones(instance):
            assert oracle_shuffle_square(instance.word()), instance.zeros


def test_solutions_characterize_squares_when_first_run_is_empty():
    for a1, a2, a3, a4 in product(range(1, 5), repeat=4):
        instance = SeparatedOnesInstance((0, a1, a2, a3, a4))
        if sum(instance.zeros) % 2:
            continue
        assert bool(solve_separated_ones(instance)) == oracle_shuffle_square(instance.word()), instance.zeros


def test_squares_without_alternating_solutions_exist():
    instance = SeparatedOnesInstance((1, 0, 2, 0, 1))

    assert instance.word().text == "01100110"
    assert oracle_shuffle_square(instance.word())
    assert solve_separated_ones(instance) == []


# ------------------------------------------------------- two-letter zero runs


def test_ths1_refuses_odd_abba():
    assert build_ths1_certificate(parse_word("1001" * 3)) is None
    assert build_ths1_certificate(parse_word("1001")) is None


def test_ths1_builds_certificate_for_even_abba():
    word = parse_word("1001" * 2)

    graph = build_ths1_certificate(word)

    assert graph is not None
    assert graph.is_perfect()
    assert find_nest(graph) is None
    assert sorted((e.p, e.q, e.mu) for e in graph.edges) == [(0, 2, 1), (1, 3, 2), (2, 4, 1)]


def test_ths1_shape_is_checked():
    with pytest.raises(CharacterizationError):
        build_ths1_certificate(parse_word("1 0^3 1 0"))
    with pytest.raises(CharacterizationError):
        build_ths1_certificate(parse_word("1 0^2 1^2"))


def _ths1_words(max_runs: int):
    for count in range(1, max_runs + 1):
        for first in (0, 1):
            letters = [(first + index) % 2 for index in range(count)]
            ones = sum(letters)
            for choice in product((1, 2), repeat=ones):
                picks = iter(choice)
                pairs = [(letter, next(picks) if letter else 2) for letter in letters]
                view = RunLengthWord.from_pairs(pairs, k=2)
                if is_even(view):
                    yield view.to_word()


def test_ths1_agrees_with_search():
    solver = ShuffleSolver()
    for word in _ths1_words(12):
        graph = build_ths1_certificate(word)
        expected = solver.decide(word, Rule.SEARCH).is_square
        assert (graph is not None) == expected, word.text
        if graph is not None:
            assert verify_certificate(word, graph).ok, word.text


# ----------------------------------------------------------------- O(m, r)


def test_omr_47_24_twin():
    construction = build_omr_twins(47, 24)
    tw = construction.twins

    assert validate(tw).ok
    assert tw.x_word().symbols == parse_word(
        "1^47 0^37 1^35 0^41 1^31 0^21 1^19 0^25 1^15 0^5 1^3 0^1"
    ).symbols
    assert construction.deficit == 16
    assert len(tw.gaps) == 16
    assert [d for d in construction.graph.deficits() if d] == [8, 8]


def test_omr_47_24_blue_end_edges():
    construction = build_omr_twins(47, 24)
    graph = construction.graph
    capacities = runs(construction.twins.word).lengths

    assert capacities[1] == 45 and capacities[5] == 37
    assert graph.multiplicity(1, 5) == 37
    assert capacities[19] == 9 and capacities[23] == 1
    assert graph.multiplicity(19, 23) == 1
    assert len(construction.twins.word) == 24 * 24
    assert len(graph.edges) == 17


def test_omr_small_r_uses_loops():
    construction = build_omr_twins(9, 3)

    assert construction.deficit == 3
    assert all(edge.p == edge.q for edge in construction.graph.edges)


@pytest.mark.parametrize("m, r", [(15, 8), (45, 23), (49, 25), (63, 32), (71, 36), (101, 50), (99, 47)])
def test_omr_construction_leaves_few_gaps(m, r):
    construction = build_omr_twins(m, r)

    assert len(construction.twins.gaps) == construction.deficit <= OMR_MAX_GAPS
    assert construction.deficit == (16 + r % 8 if r >= 24 else r)
    assert validate(construction.twins).ok
    assert find_nest(construction.graph) is None


def test_omr_deficits_table_small():
    table = omr_deficits(61)

    assert max(table.values()) <= 23
    assert table[(47, 24)] == 16
    assert table[(9, 3)] == 3


@pytest.mark.slow
def test_omr_deficits_full_sweep():
    table = omr_deficits(199)

    assert max(table.values()) <= 23
    assert len(table) == sum((m + 1) // 2 for m in range(1, 200, 2))


def test_omr_parameters_are_checked():
    from shufflesq.core.errors import FamilyError

    with pytest.raises(FamilyError):
        build_omr_twins(10, 3)


def test_omr_construction_rejects_too_many_gaps(monkeypatch):
    monkeypatch.setattr(constructions, "_omr_block_edges", lambda offset, size, capacity: [])

    with pytest.raises(CharacterizationError, match="more than 23"):
        build_omr_twins(47, 24)


OMR_47_24_DOT = r"""graph G {
  rankdir=LR;
  node [shape=circle];
  u1 [label="u1\n1^47"];
  u2 [label="u2\n0^45"];
  u3 [label="u3\n1^43"];
  u4 [label="u4\n0^41"];
  u5 [label="u5\n1^39"];
  u6 [label="u6\n0^37"];
  u7 [label="u7\n1^35"];
  u8 [label="u8\n0^33"];
  u9 [label="u9\n1^31"];
  u10 [label="u10\n0^29"];
  u11 [label="u11\n1^27"];
  u12 [label="u12\n0^25"];
  u13 [label="u13\n1^23"];
  u14 [label="u14\n0^21"];
  u15 [label="u15\n1^19"];
  u16 [label="u16\n0^17"];
  u17 [label="u17\n1^15"];
  u18 [label="u18\n0^13"];
  u19 [label="u19\n1^11"];
  u20 [label="u20\n0^9"];
  u21 [label="u21\n1^7"];
  u22 [label="u22\n0^5"];
  u23 [label="u23\n1^3"];
  u24 [label="u24\n0^1"];
  u1 -- u2 -- u3 -- u4 -- u5 -- u6 -- u7 -- u8 -- u9 -- u10 -- u11 -- u12 -- u13 -- u14 -- u15 -- u16 -- u17 -- u18 -- u19 -- u20 -- u21 -- u22 -- u23 -- u24 [style=invis];
  u1 -- u3 [label="8"];
  u1 -- u5 [label="39"];
  u2 -- u6 [label="37"];
  u3 -- u7 [label="35"];
  u4 -- u8 [label="33"];
  u4 -- u10 [label="8"];
  u9 -- u11 [label="8"];
  u9 -- u13 [label="23"];
  u10 -- u14 [label="21"];
  u11 -- u15 [label="19"];
  u12 -- u16 [label="17"];
  u12 -- u18 [label="8"];
  u17 -- u19 [label="8"];
  u17 -- u21 [label="7"];
  u18 -- u22 [label="5"];
  u19 -- u23 [label="3"];
  u20 -- u24 [label="1"];
}
"""


def test_omr_47_24_dot_export():
    graph = build_omr_twins(47, 24).graph

    assert export_dot(graph) == OMR_47_24_DOT
    assert export_dot(build_omr_twins(47, 24).graph) == OMR_47_24_DOT
