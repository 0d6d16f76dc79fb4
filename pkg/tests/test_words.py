from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from circrep.words import (AlphabetError, BoundExceededError, EmptyWordError, PowerThreshold,
                           Word, border_array, characterization_sets, circular_critical_exponent,
                           circular_factors, conjugates, critical_exponent, exponent,
                           is_circularly_power_free, is_power_free, parse_rational, parse_word,
                           render, shortest_period, verify_conjugate_characterization)

ternary = st.text(alphabet="012", min_size=1, max_size=10)


def W(text):
    return parse_word(text)[0]


# -- parsing ------------------------------------------------------------------

def test_letters_map_by_first_appearance():
    w, letters = parse_word("dividing")
    assert w.text == "01210134"
    assert letters == "divng"
    assert render(w, letters) == "dividing"


def test_digits_map_directly():
    w, _ = parse_word("0120")
    assert list(w) == [0, 1, 2, 0] and w.alphabet_size == 3


def test_mixed_input_rejected():
    with pytest.raises(AlphabetError):
        parse_word("ab12")


def test_symbol_outside_alphabet():
    with pytest.raises(AlphabetError):
        Word([0, 3], 3)


def test_empty_word_is_a_word():
    w = Word([], 2)
    assert len(w) == 0 and conjugates(w) == [w]


@pytest.mark.parametrize("text,value", [("13/4", Fraction(13, 4)), ("3", Fraction(3)),
                                        ("105/46", Fraction(105, 46)), ("6/4", Fraction(3, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["3.25", "1/0", "", "a/b", "-1", "1/2/3"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_threshold_strictness():
    assert PowerThreshold(Fraction(5, 2)).violated_by(5, 2)
    assert not PowerThreshold(Fraction(5, 2), strict=True).violated_by(5, 2)
    assert PowerThreshold(Fraction(5, 2), strict=True).violated_by(6, 2)
    with pytest.raises(ValueError):
        PowerThreshold(Fraction(1, 2))


# -- periods and exponents ----------------------------------------------------

@pytest.mark.parametrize("text,p", [("alfalfa", 3), ("aaaa", 1), ("abcab", 3), ("a", 1)])
def test_shortest_period(text, p):
    assert shortest_period(W(text)) == p


@pytest.mark.parametrize("text,e", [("alfalfa", Fraction(7, 3)), ("ab", Fraction(1)),
                                    ("ababa", Fraction(5, 2))])
def test_exponent(text, e):
    assert exponent(W(text)) == e


def test_empty_word_errors():
    for fn in (shortest_period, exponent, critical_exponent, circular_critical_exponent):
        with pytest.raises(EmptyWordError):
            fn(Word([], 2))


def test_border_array():
    assert border_array("abab") == [0, 0, 1, 2]
    assert border_array("aabaaab") == [0, 1, 0, 1, 2, 2, 3]


def test_shortest_period_matches_naive_up_to_8():
    for k in (1, 2, 3):
        for n in range(1, 9):
            for s in oracles.all_words(k, n):
                assert shortest_period(Word.parse(s)) == oracles.period(s), s


@given(st.text(alphabet="01", min_size=1, max_size=6), st.integers(1, 5))
def test_power_of_word_has_exponent_at_least_n(x, n):
    assert exponent(Word.parse(x * n)) >= n


def test_critical_exponent_examples():
    value, wit = critical_exponent(W("ababa"))
    assert value == Fraction(5, 2) and wit.period == 2
    assert critical_exponent(W("abc"))[0] == 1
    w, letters = parse_word("dividing")
    value, wit = critical_exponent(w)
    assert value == Fraction(3, 2)
    assert render(wit.factor, letters) in ("idi", "ivi")
    assert wit.replay(w)


def test_conjugates():
    assert [c.text for c in conjugates(W("abc"))] == ["012", "120", "201"]
    assert [c.text for c in conjugates(W("aa"))] == ["00", "00"]
    w, letters = parse_word("dividi")
    shown = [render(c, letters) for c in conjugates(w)]
    assert shown == ["dividi", "ividid", "vididi", "ididiv", "didivi", "idivid"]


# -- circular exponents -------------------------------------------------------

def test_cexp_dividing():
    w, letters = parse_word("dividing")
    value, wit = circular_critical_exponent(w)
    assert value == Fraction(5, 2)
    assert render(wit.factor, letters) == "ididi"
    assert wit.circular and wit.replay(w)


def test_cexp_small_examples():
    assert circular_critical_exponent(W("ab"))[0] == 1
    value, wit = circular_critical_exponent(W("aabaa"))
    assert value == 4 and wit.factor.text == "0000"
    assert wit.tuv == (0, 2, 1, 2)


def test_circular_factors():
    assert {w.text for w in circular_factors(W("aba"), 2)} == {"0", "1", "00", "01", "10"}
    assert circular_factors(Word([], 2), 5) == set()
    w, letters = parse_word("dividing")
    assert any(render(f, letters) == "ididi" for f in circular_factors(w, 6))


def test_power_freeness_examples():
    v = is_power_free(W("ababa"), PowerThreshold(2, strict=True))
    assert not v and v.witness.factor.text == "01010" and v.witness.exponent == Fraction(5, 2)
    assert is_power_free(Word([], 2), PowerThreshold(2))
    assert is_power_free(W("abcacbabcb"), PowerThreshold(Fraction(7, 4), strict=True))
    w = W("dividing")
    assert is_circularly_power_free(w, PowerThreshold(3))
    assert is_circularly_power_free(w, PowerThreshold(Fraction(5, 2), strict=True))
    v = is_circularly_power_free(w, PowerThreshold(Fraction(5, 2)))
    assert not v and v.witness.replay(w)


@settings(max_examples=150, deadline=None)
@given(ternary)
def test_exponents_match_definitions(s):
    w = Word.parse(s)
    ce, cwit = critical_exponent(w)
    cc, ccwit = circular_critical_exponent(w)
    assert ce == oracles.critical_exponent(s)
    assert cc == oracles.cexp(s)
    assert ce <= cc
    assert cwit.replay(w) and ccwit.replay(w)
    assert cwit.exponent == ce and ccwit.exponent == cc


@settings(max_examples=100, deadline=None)
@given(ternary, st.data())
def test_monotone_under_factors(s, data):
    i = data.draw(st.integers(0, len(s) - 1))
    j = data.draw(st.integers(i + 1, len(s)))
    w, f = Word.parse(s), Word.parse(s[i:j], 3)
    assert critical_exponent(f)[0] <= critical_exponent(w)[0]
    assert circular_critical_exponent(f)[0] <= circular_critical_exponent(w)[0]


@settings(max_examples=100, deadline=None)
@given(ternary, st.integers(1, 10))
def test_circular_factors_match_definition(s, m):
    got = {f.text for f in circular_factors(Word.parse(s), m)}
    assert got == {f for f in oracles.circular_factors(s) if len(f) <= m}


# -- the four descriptions of circular factors --------------------------------

@pytest.mark.parametrize("text", ["aba", "001011", "dividing"])
def test_characterization_examples(text):
    assert verify_conjugate_characterization(W(text))


def test_characterization_bound():
    with pytest.raises(BoundExceededError):
        verify_conjugate_characterization(W("0" * 13))
    assert verify_conjugate_characterization(W("0" * 13), bound=13)


def test_characterization_binary_up_to_5():
    for n in range(6):
        for t in product("01", repeat=n):
            a, b, c, d = characterization_sets(Word.parse("".join(t), 2))
            assert a == b == c == d
