import pytest

from shufflesq.core.errors import FamilyError
from shufflesq.core.families import (
    FamilySpec,
    a_word,
    abba_block,
    alternating_word,
    b_word,
    even_prefixes,
    generate,
    kolakoski_prefix,
    omr_word,
    separated_ones,
    thue_morse_prefix,
)
from shufflesq.core.words import parse_word, runs


def test_omr_run_lengths():
    view = runs(omr_word(47, 24))

    assert view.lengths == tuple(47 - 2 * index for index in range(24))
    assert view.symbols[0] == 1
    assert view.total_length == 24 * (47 - 24 + 1)


def test_omr_parameter_checks():
    with pytest.raises(FamilyError):
        omr_word(8, 2)
    with pytest.raises(FamilyError):
        omr_word(9, 6)


def test_a_and_b_words():
    assert runs(a_word(4)).lengths == (27, 9, 3, 1)
    assert runs(b_word(3)).lengths == (10, 7, 4)


def test_alternating_word_starts_with_one():
    assert alternating_word([3, 1, 2]).text == "111011"
    with pytest.raises(FamilyError):
        alternating_word([2, 0])


def test_abba_block():
    assert abba_block(2, 3).text == "100110011001"
    assert abba_block(1, 1).text == "101"


def test_separated_ones():
    assert separated_ones([0, 3, 9, 11, 7]).symbols == parse_word("1 0^3 1 0^9 1 0^11 1 0^7").symbols
    with pytest.raises(FamilyError):
        separated_ones([1, 2])


def test_thue_morse_prefix():
    assert thue_morse_prefix(12).text == "011010011001"


def test_thue_morse_doubling():
    for n in (1, 2, 4, 8, 16):
        half = thue_morse_prefix(n).symbols
        assert thue_morse_prefix(2 * n).symbols == half + tuple(1 - symbol for symbol in half)


def test_kolakoski_prefix():
    assert kolakoski_prefix(8).text == "12211212"
    assert kolakoski_prefix(16).text == "1221121221221121"


def test_kolakoski_is_its_own_run_length_sequence():
    prefix = kolakoski_prefix(60)

    lengths = runs(prefix).lengths

    assert lengths[:-1] == prefix.symbols[: len(lengths) - 1]


def test_even_prefixes():
    assert even_prefixes(kolakoski_prefix, 16) == [0, 4, 8, 16]
    assert even_prefixes(thue_morse_prefix, 16) == [0, 4, 8, 12, 16]


def test_family_spec_parse_and_generate():
    spec = FamilySpec.parse("OMR", ["9", "3"])

    assert spec == FamilySpec("o", (9, 3))
    assert str(spec) == "o 9 3"
    assert runs(generate(spec)).lengths == (9, 7, 5)
    assert generate(FamilySpec.parse("tm", ["4"])).text == "0110"


def test_family_spec_errors():
    with pytest.raises(FamilyError):
        FamilySpec.parse("fibonacci", [])
    with pytest.raises(FamilyError):
        FamilySpec.parse("abba", ["two", "3"])
    with pytest.raises(FamilyError):
        generate(FamilySpec.parse("abba", ["2"]))
