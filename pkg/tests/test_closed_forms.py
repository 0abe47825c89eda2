from itertools import product

import pytest

from shufflesq.core.errors import CharacterizationError
from shufflesq.core.families import a_word, abba_block, alternating_word, b_word, omr_word
from shufflesq.core.models import Rule
from shufflesq.core.words import RunLengthWord, Word, is_even, parse_word, runs
from shufflesq.services.closed_forms import (
    abba_shape,
    check_2cond,
    claim_cl_applies,
    classify_1and2,
    classify_few_runs,
    construct_few_runs,
    fits_1and2_shape,
    has_equal_split,
    is_odd_abba,
    lower_bound_g,
    rotate_to_square_m2,
    theorem_abba_applies,
)
from shufflesq.services.solver import ShuffleSolver
from shufflesq.utils.integrity import verify_certificate


def _view(text: str) -> RunLengthWord:
    return runs(parse_word(text))


def _searched(word) -> bool:
    return ShuffleSolver().decide(word, Rule.SEARCH).is_square


# ----------------------------------------------------------------- few runs


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1^7 0^6 1^9 0^8", False),
        ("0^8 1^7 0^6 1^9", True),
        ("1^2 0^2 1^2", True),
        ("1 0^2 1", False),
        ("1^3 0 1 0^3", True),
    ],
)
def test_classify_few_runs_examples(text, expected):
    result = classify_few_runs(_view(text))

    assert result.is_square is expected
    if expected:
        assert verify_certificate(_view(text), result.graph).ok


def test_classify_few_runs_preconditions():
    with pytest.raises(CharacterizationError):
        classify_few_runs(_view("1 0 1 0 1 0"))
    with pytest.raises(CharacterizationError):
        classify_few_runs(_view("1 0^2"))


def _few_run_words(max_run: int):
    for count in range(1, 6):
        for lengths in product(range(1, max_run + 1), repeat=count):
            word = alternating_word(lengths)
            if is_even(word):
                yield word


def test_few_runs_agree_with_search():
    solver = ShuffleSolver()
    for word in _few_run_words(4):
        view = runs(word)
        graph = construct_few_runs(view)
        assert (graph is not None) == solver.decide(word, Rule.SEARCH).is_square, word.text
        if graph is not None:
            assert verify_certificate(view, graph).ok, word.text


@pytest.mark.slow
def test_few_runs_agree_with_search_up_to_six():
    solver = ShuffleSolver()
    for word in _few_run_words(6):
        assert classify_few_runs(runs(word)).is_square == solver.decide(word, Rule.SEARCH).is_square, word.text


def test_few_runs_relabelled_word():
    flipped = Word(tuple(1 - symbol for symbol in parse_word("1^3 0 1 0^3").symbols), 2)

    assert classify_few_runs(runs(flipped)).is_square


# ------------------------------------------------------ four separated ones


def test_check_2cond_examples():
    assert check_2cond(3, 9, 11, 7)
    assert not check_2cond(16, 9, 4, 5)
    assert check_2cond(5, 16, 9, 4)


def test_check_2cond_rejects_empty_second_run():
    with pytest.raises(CharacterizationError):
        check_2cond(1, 0, 1, 2)


@pytest.mark.parametrize("values", [(2, 3, 0, 1), (0, 3, 0, 1), (0, 5, 0, 3), (1, 2, 0, 1)])
def test_check_2cond_with_empty_third_run(values):
    a1, a2, a3, a4 = values
    word = parse_word(f"1 0^{a1} 1 0^{a2} 1 1 0^{a4}".replace(" 0^0", ""))

    assert not check_2cond(*values)
    assert not _searched(word)


def test_check_2cond_parity_of_first_pair():
    assert parse_word("1 1 0^3 1 1 0").text == "11000110"
    assert not check_2cond(0, 3, 0, 1)
    assert check_2cond(0, 1, 0, 1)
    assert check_2cond(0, 2, 0, 2)


def test_check_2cond_matches_search():
    for a1, a2, a3, a4 in product(range(0, 7), range(1, 7), range(0, 7), range(0, 7)):
        if (a1 + a2 + a3 + a4) % 2:
            continue
        word = parse_word(f"1 0^{a1} 1 0^{a2} 1 0^{a3} 1 0^{a4}".replace(" 0^0", ""))
        assert check_2cond(a1, a2, a3, a4) == _searched(word), (a1, a2, a3, a4)


def test_rotate_to_square_m2_example():
    rotation = rotate_to_square_m2((16, 9, 4, 5))

    assert rotation.values == (5, 16, 9, 4)
    assert rotation.offset == 3


def test_rotate_to_square_m2_identity():
    assert rotate_to_square_m2((3, 9, 11, 7)).offset == 0


def test_every_even_quadruple_has_a_square_rotation():
    for values in product(range(1, 9), repeat=4):
        if sum(values) % 2:
            continue
        rotation = rotate_to_square_m2(values)
        assert check_2cond(*rotation.values)
        assert rotation.values == values[rotation.offset :] + values[: rotation.offset]


# ---------------------------------------------------------- abba-type words


def test_has_equal_split():
    assert has_equal_split([1, 2, 3])
    assert not has_equal_split([2, 2, 10, 2, 2])
    assert not has_equal_split([3, 3, 3])
    with pytest.raises(CharacterizationError):
        has_equal_split([1] * 5, max_terms=4)


def test_theorem_abba_examples():
    assert theorem_abba_applies(_view("1 0^2 1^2 0^2 1^2 0^10 1^2 0^2 1^2 0^2 1"))
    assert not theorem_abba_applies(_view("101100110001"))
    assert not _searched(parse_word("101100110001"))


@pytest.mark.parametrize("r, m", list(product(range(1, 5), range(1, 4))))
def test_theorem_abba_covers_odd_abba_blocks(r, m):
    assert theorem_abba_applies(runs(abba_block(r, 2 * m - 1)))


def test_abba_shape_needs_odd_run_count():
    assert abba_shape(_view("1 0^2 1^2 0^3 1")) == ([1, 2, 1], [2, 3])
    with pytest.raises(CharacterizationError):
        abba_shape(_view("1 0 1 0"))


def test_theorem_abba_implies_not_square_on_small_words():
    for length in range(4, 13, 2):
        for middle in product((0, 1), repeat=length - 2):
            word = Word((1,) + middle + (1,), 2)
            view = runs(word)
            if not is_even(view) or len(view) < 3:
                continue
            if theorem_abba_applies(view):
                assert not _searched(word), word.text


def _abba_run_lengths(max_length: int):
    """Odd outer runs and even inner runs of the outer letter, total at most ``max_length``."""

    def grow(lengths, total):
        for b in range(1, max_length - total):
            for a in range(1, max_length - total - b + 1):
                extended = lengths + (b, a)
                if a % 2:
                    yield extended
                else:
                    yield from grow(extended, total + b + a)

    for first in range(1, max_length - 1, 2):
        yield from grow((first,), first)


@pytest.mark.slow
def test_theorem_abba_is_sound_up_to_length_24():
    checked = 0
    for lengths in _abba_run_lengths(24):
        word = alternating_word(lengths)
        view = runs(word)
        if not is_even(view) or not theorem_abba_applies(view):
            continue
        assert not _searched(word), lengths
        checked += 1

    assert checked > 0


# ----------------------------------------------------------- decreasing runs


def test_claim_cl_examples():
    assert claim_cl_applies(_view("1 0^9 1^7 0^5 1^4 0^3 1^2 0"))
    assert claim_cl_applies(_view("1^11 0^8 1^6 0^4 1^3"))
    assert not claim_cl_applies(_view("0011"))
    for m, r in [(9, 3), (15, 8), (47, 24)]:
        assert claim_cl_applies(runs(omr_word(m, r)))


def test_claim_cl_implies_not_square():
    for lengths in product(range(1, 6), repeat=4):
        word = alternating_word(lengths)
        view = runs(word)
        if is_even(view) and claim_cl_applies(view):
            assert not _searched(word), lengths


# -------------------------------------------------------------- lower bound


def test_lower_bound_examples():
    assert lower_bound_g(runs(a_word(4))) == 2
    assert lower_bound_g(runs(b_word(3)), require_odd=False) == 3
    assert lower_bound_g(runs(omr_word(9, 3))) == 2
    assert lower_bound_g(_view("1^5")) == 1


def test_lower_bound_hypotheses():
    with pytest.raises(CharacterizationError):
        lower_bound_g(runs(b_word(3)))
    with pytest.raises(CharacterizationError):
        lower_bound_g(_view("1^3 0^5"))


# ------------------------------------------------------------ ones and twos


def test_classify_1and2_examples():
    assert not classify_1and2(_view("1001")).is_square
    assert classify_1and2(_view("1010")).is_square
    assert classify_1and2(_view("0 1 0^2 1 0")).is_square
    with pytest.raises(CharacterizationError):
        classify_1and2(_view("1^2 0^2"))


def _ones_and_twos_words(max_length: int):
    def grow(symbols):
        if symbols and len(symbols) % 2 == 0:
            yield symbols
        if len(symbols) == max_length:
            return
        if not symbols or symbols[-1] == 0:
            yield from grow(symbols + (1,))
        if not symbols or symbols[-1] == 1:
            for zeros in (1, 2):
                if len(symbols) + zeros <= max_length:
                    yield from grow(symbols + (0,) * zeros)

    yield from grow(())


def test_classify_1and2_matches_search():
    for symbols in _ones_and_twos_words(16):
        word = Word(symbols, 2)
        view = runs(word)
        if not is_even(view) or not fits_1and2_shape(view):
            continue
        assert classify_1and2(view).is_square == _searched(word), word.text


def test_is_odd_abba():
    assert is_odd_abba(_view("1001"))
    assert is_odd_abba(runs(abba_block(2, 3)))
    assert not is_odd_abba(runs(abba_block(2, 2)))
    assert not is_odd_abba(runs(abba_block(3, 1)))
