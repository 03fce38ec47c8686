import pytest
from hypothesis import settings
from hypothesis import strategies as st

from qlie.algebras import build_model
from qlie.coeffs import Q, R, S, RatFunc
from qlie.freealg import THREE_LETTERS, TWO_LETTERS, NCPoly
from qlie.parse import parse_poly

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@pytest.fixture(scope="session")
def uqrs():
    return build_model()


@pytest.fixture(scope="session")
def uq_r0():
    return build_model(s=0)


@pytest.fixture(scope="session")
def uq_0s():
    return build_model(r=0)


def P(text, alphabet=THREE_LETTERS):
    return parse_poly(text, alphabet)


small_ints = st.integers(min_value=-6, max_value=6)
_monomials = st.sampled_from([RatFunc(1), Q, R, S, Q * R, R * S, Q * Q])


@st.composite
def ratfuncs(draw, allow_zero=True):
    num = sum((draw(small_ints) * draw(_monomials) for _ in range(draw(st.integers(1, 3)))), RatFunc(0))
    den = RatFunc(1)
    if draw(st.booleans()):
        den = draw(st.integers(1, 4)) + draw(st.sampled_from([Q, R, S, Q * S, RatFunc(0)]))
        if not den:
            den = RatFunc(1)
    f = num / den
    if not allow_zero and not f:
        f = RatFunc(1)
    return f


def words(alphabet, max_len):
    return st.text(alphabet=alphabet.letters, max_size=max_len)


@st.composite
def ncpolys(draw, alphabet=THREE_LETTERS, max_len=4, max_terms=4, symbolic=True):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        c = draw(ratfuncs()) if symbolic else RatFunc(draw(small_ints))
        terms[draw(words(alphabet, max_len))] = c
    return NCPoly(alphabet, terms)


def two_letter_polys(**kw):
    return ncpolys(TWO_LETTERS, **kw)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
