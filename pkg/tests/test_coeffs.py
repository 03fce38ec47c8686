from fractions import Fraction

import pytest
from hypothesis import given

from conftest import ratfuncs
from qlie.coeffs import (
    ONE,
    Q,
    R,
    S,
    ZERO,
    RatFunc,
    RootOfUnityError,
    evaluate,
    q_bracket,
    ratfunc_arith,
)


def test_add_collapses_to_one():
    assert ratfunc_arith(1 / (1 - Q), -Q / (1 - Q), "add") == ONE


def test_q_special_product():
    assert ratfunc_arith(1 - Q, 1 + Q + Q**2, "mul") == 1 - Q**3


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ratfunc_arith(RatFunc(1), RatFunc(0), "div")


@pytest.mark.parametrize("n, expected", [(0, ZERO), (1, ONE), (3, 1 + Q + Q**2), (-2, ZERO)])
def test_q_bracket(n, expected):
    assert q_bracket(n) == expected


def test_evaluate_examples():
    assert evaluate(q_bracket(2), {"q": 2}) == 3
    assert evaluate((1 - Q**3) / (1 - Q), {"q": Fraction(1, 2)}, guard_order=12) == Fraction(7, 4)


def test_evaluate_vanishing_denominator():
    with pytest.raises(RootOfUnityError):
        evaluate(1 / (1 - Q), {"q": 1})
    # r is not guarded, only the denominator check applies
    with pytest.raises(ZeroDivisionError):
        evaluate(1 / (1 - R), {"r": 1})


def test_evaluate_guards():
    with pytest.raises(RootOfUnityError):
        evaluate(Q, {"q": 0})
    with pytest.raises(RootOfUnityError):
        evaluate(Q, {"q": -1})
    with pytest.raises(ValueError, match="no value"):
        evaluate(Q + R, {"q": 2})


def test_canonical_form_is_normalized():
    f = (2 * Q - 2) / (4 - 4 * Q**2)
    # -1/(2(1+q)) with monic denominator
    assert f.render() == "(-1/2)/(q + 1)"
    assert f.den.leading_coefficient() == 1
    assert RatFunc(0).den.is_one()
    assert (Q - Q) == ZERO and (Q - Q).den.is_one()


def test_render_examples():
    assert (1 / (1 - Q)).render() == "(-1)/(q - 1)"
    assert (Q / (1 - Q)).render() == "(-q)/(q - 1)"
    assert (R * S).render() == "r*s"
    assert RatFunc(Fraction(-3, 4)).render() == "-3/4"


def test_parse_roundtrip_scalar():
    f = (Q**2 * R - Fraction(1, 3) * S) / (1 - Q) ** 2
    assert RatFunc.parse(f.render()) == f


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(ratfuncs(), ratfuncs())
def test_commutativity_and_inverse(a, b):
    assert a + b == b + a and a * b == b * a
    if b:
        assert (a / b) * b == a


@given(ratfuncs())
def test_canonicalization_idempotent(f):
    again = RatFunc(f.num, f.den)
    assert again.num == f.num and again.den == f.den
    assert hash(again) == hash(f)


@pytest.mark.parametrize("n", range(21))
def test_q_bracket_recurrence(n):
    assert q_bracket(n + 1) == q_bracket(n) + Q**n
    assert (1 - Q) * q_bracket(n) == 1 - Q**n
