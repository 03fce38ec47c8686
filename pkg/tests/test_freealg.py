import pytest
from hypothesis import given, settings

from conftest import P, ncpolys, two_letter_polys
from qlie.coeffs import Q, R, S
from qlie.freealg import (
    THREE_LETTERS,
    TWO_LETTERS,
    AlphabetMismatch,
    GeneratorMap,
    NCPoly,
    apply_generator_map,
    bracket,
    identity_map,
    multiply,
    render_word,
    runs,
)


def test_multiply_examples():
    assert multiply(P("A"), P("B")) == NCPoly.word(THREE_LETTERS, "AB")
    assert multiply(P("A+B"), P("A")) == P("A^2 + B*A")
    x = (R * P("A") + S * P("B") - Q * P("C")) / (1 - Q)
    assert multiply(x, P("I")) == x


def test_bracket_examples():
    assert bracket(P("A"), P("A")).is_zero()
    assert bracket(P("A"), P("B")) == P("A*B - B*A")
    assert (bracket(P("A"), P("B")) + bracket(P("B"), P("A"))).is_zero()


def test_generator_map_examples():
    elim = GeneratorMap(THREE_LETTERS, THREE_LETTERS, {"C": P("A*B - B*A")})
    assert apply_generator_map(elim, P("C^2")) == P("(A*B - B*A)^2")
    scale = GeneratorMap(THREE_LETTERS, THREE_LETTERS, {"A": S * P("A"), "B": P("B")})
    assert apply_generator_map(scale, P("A*B - q*B*A - s*B")) == S * P("A*B - q*B*A - B")
    p = P("q*A*C*B - 3*C^2 + I")
    assert apply_generator_map(identity_map(THREE_LETTERS), p) == p


def test_render_examples():
    assert render_word("") == "I"
    assert render_word("BCCA") == "B*C^2*A"
    assert (Q / (1 - Q) * P("C^2*A")).render() == "((-q)/(q - 1))*C^2*A"
    assert NCPoly.zero(THREE_LETTERS).render() == "0"
    assert P("A + B + C").render() == "B + C + A"


def test_canonical_order_degree_then_rank():
    p = P("A^2 + B + C*A + B*C + I")
    assert [w for w, _ in p.items()] == ["", "B", "BC", "CA", "AA"]


def test_runs():
    assert runs("BBCAAA") == [("B", 2), ("C", 1), ("A", 3)]


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        NCPoly.word(TWO_LETTERS, "A") + NCPoly.word(THREE_LETTERS, "A")
    with pytest.raises(ValueError):
        NCPoly.word(TWO_LETTERS, "C")


@settings(max_examples=100)
@given(ncpolys(max_len=4, max_terms=3), ncpolys(max_len=4, max_terms=3), ncpolys(max_len=4, max_terms=3))
def test_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=50)
@given(ncpolys(max_len=3, max_terms=3), ncpolys(max_len=3, max_terms=3), ncpolys(max_len=3, max_terms=3))
def test_jacobi(x, y, z):
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert total.is_zero()


@settings(max_examples=50)
@given(ncpolys(max_len=3, max_terms=3), ncpolys(max_len=3, max_terms=3))
def test_generator_map_multiplicative(x, y):
    m = GeneratorMap(THREE_LETTERS, TWO_LETTERS, {"A": P("A", TWO_LETTERS), "B": P("B", TWO_LETTERS),
                                                  "C": P("A*B - B*A", TWO_LETTERS)})
    assert m(x * y) == m(x) * m(y)


@given(two_letter_polys(max_len=4), two_letter_polys(max_len=4))
def test_addition_group(x, y):
    assert (x + y) - y == x
    assert x + (-x) == NCPoly.zero(TWO_LETTERS)
