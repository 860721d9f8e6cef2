import pytest
from hypothesis import given, strategies as st

from visidense.words import (abelianize, concat, free_alphabet, free_reduce,
                             invert, surface_alphabet, variable_alphabet)

A2 = surface_alphabet(1)  # a1, b1
F2 = free_alphabet(2)


def w(text, alphabet=A2):
    return alphabet.parse(text)


def test_letter_order_is_integer_order():
    S2 = surface_alphabet(2)
    names = ["a1", "b1", "a2", "b2"]
    codes = [S2.generator(n, inv) for n in names for inv in (False, True)]
    assert codes == sorted(codes) == list(range(8))


def test_inverse_is_fixpoint_free_involution():
    S2 = surface_alphabet(2)
    for letter in range(S2.size):
        assert S2.inverse(letter) != letter
        assert S2.inverse(S2.inverse(letter)) == letter


def test_free_reduce_single_cancellation():
    assert free_reduce(w("a1 b1 B1 a1")) == w("a1 a1")


def test_free_reduce_to_empty():
    assert free_reduce(w("a1 A1")) == ()


def test_free_reduce_fixpoint():
    word = w("a1 b1 A1")
    assert free_reduce(word) == word


def test_abelianize_commutator_is_zero():
    assert abelianize(w("a1 b1 A1 B1"), 2) == (0, 0)


def test_abelianize_counts():
    assert abelianize(w("a1 a1 b1"), 2) == (2, 1)
    assert abelianize((), 2) == (0, 0)


words_strategy = st.lists(st.integers(0, 7), max_size=30).map(tuple)


@given(words_strategy)
def test_free_reduce_idempotent_and_non_increasing(word):
    reduced = free_reduce(word)
    assert free_reduce(reduced) == reduced
    assert len(reduced) <= len(word)


@given(words_strategy)
def test_abelianize_ignores_free_reduction(word):
    assert abelianize(free_reduce(word), 4) == abelianize(word, 4)


@given(words_strategy)
def test_parity_law(word):
    ab = abelianize(word, 4)
    assert (len(free_reduce(word)) - sum(abs(c) for c in ab)) % 2 == 0


@given(words_strategy, words_strategy)
def test_abelianize_is_homomorphism(u, v):
    ab_u = abelianize(u, 4)
    ab_v = abelianize(v, 4)
    assert abelianize(concat(u, v), 4) == tuple(
        x + y for x, y in zip(ab_u, ab_v))


@given(words_strategy)
def test_invert_involution(word):
    word = free_reduce(word)
    assert invert(invert(word)) == word
    assert concat(word, invert(word)) == ()


def test_parser_shorthands_agree():
    assert w("A1") == w("a1^-1")
    assert w("a1 B1 a1") == w("a1, b1^-1, a1")


def test_parser_printer_round_trip():
    S2 = surface_alphabet(2)
    word = S2.parse("a1 B2 a2 A1 b1^-1")
    assert S2.parse(S2.spell(word)) == word


def test_parser_rejects_unknown_generator():
    with pytest.raises(ValueError):
        F2.parse("c1")
    with pytest.raises(ValueError):
        F2.parse("a1 !")


def test_variable_alphabet_names():
    X = variable_alphabet(3)
    assert X.spell(X.parse("x1 X3 x2")) == "x1 X3 x2"
