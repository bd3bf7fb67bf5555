import pytest
from hypothesis import given
from hypothesis import strategies as st

from l2euler.chain import ChainComplex
from l2euler.fileformat import (
    InputFile, ParseError, parse_expr, parse_text, parse_word, serialize, write_presentation,
)
from l2euler.group import Presentation
from l2euler.ring import GroupRingElement
from l2euler.words import word_to_str

from strategies import elements, words

FIXTURES = ["borromean", "v1539", "v1539_A", "l10n14", "fbc1"]


def test_borromean_file(fixture):
    inp = fixture("borromean")
    assert inp.presentation.ngens == 3
    assert len(inp.presentation.relators) == 2
    assert inp.complex.dims == (1, 3, 2)
    assert inp.source == "borromean-complex"


def test_expression_syntax():
    names = ("a", "b", "c")
    assert parse_expr("a*b - [a b]", names) == GroupRingElement()
    assert parse_expr("(1-a)^2", names) == parse_expr("1 - 2a + a^2", names)
    assert parse_expr("A", names) == parse_expr("a^-1", names)
    assert parse_word("(ab)^2", names) == parse_word("a b a b", names)


def test_macros_and_continuations():
    text = "generators a b\ndefine X = a^2 b^-1\nrelator X a \\\n  b\ndims 1 1\nentry d1 1 1 = 1 - X\n"
    inp = parse_text(text)
    assert inp.presentation.relators[0] == parse_word("a^2 B a b", "ab")
    assert inp.complex.boundary(1)[0][0] == parse_expr("1 - a^2 B", "ab")


@pytest.mark.parametrize("bad", [
    "generators a b\nrelator a^x b\n",
    "generators a b\nrelator a z\n",
    "generators a b\ndims 1 2\nentry d1 1 1 = (1 - a\n",
    "generators a b\ndims 1 1\nentry d3 1 1 = a\n",
    "relator a\n",
])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_text(bad)


def test_error_location():
    with pytest.raises(ParseError) as info:
        parse_text("generators a b\nrelator a^x b\n")
    assert info.value.line == 2


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip_fixtures(fixture, name):
    inp = fixture(name)
    once = parse_text(serialize(inp))
    assert once.presentation.relators == inp.presentation.relators
    assert once.complex == inp.complex
    assert serialize(once) == serialize(inp)


@given(st.lists(words(2, 5), min_size=1, max_size=3), st.lists(elements(2, 3), min_size=2, max_size=2))
def test_round_trip_random(relators, entries):
    p = Presentation(2, tuple(relators))
    C = ChainComplex((1, 2), [[[entries[0]], [entries[1]]]])
    inp = InputFile(p, C, name="random")
    back = parse_text(serialize(inp))
    assert back.complex == C
    assert back.presentation.relators == p.relators
    assert serialize(back) == serialize(inp)


@given(words(3, 6))
def test_word_printing_round_trip(w):
    names = ("a", "b", "c")
    assert parse_word(word_to_str(w, names) or "1", names) == w


def test_write_presentation_fox(fixture):
    p = fixture("fbc1").presentation
    inp = parse_text(write_presentation(p, name="x"))
    assert inp.presentation.relators == p.relators
    assert inp.complex.dims == (1, 4, 3)
