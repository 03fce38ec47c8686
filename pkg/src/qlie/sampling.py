"""Seeded random inputs for property checks and verification batches."""

from __future__ import annotations

import random
from fractions import Fraction

from .coeffs import Q, R, S, RatFunc
from .freealg import Alphabet, NCPoly, Word


def random_scalar(rng: random.Random, symbolic: bool = True) -> RatFunc:
    """Small nonzero integer, optionally times a low-degree monomial in q, r, s."""
    c = RatFunc(rng.choice([i for i in range(-5, 6) if i]))
    if symbolic and rng.random() < 0.4:
        c = c * rng.choice([Q, R, S, Q * R, R * S, Q + 1, S - R])
    return c


def random_word(rng: random.Random, alphabet: Alphabet, max_degree: int) -> Word:
    n = rng.randint(0, max_degree)
    return "".join(rng.choice(alphabet.letters) for _ in range(n))


def random_ncpoly(rng: random.Random, alphabet: Alphabet, max_degree: int = 6, max_terms: int = 6,
                  symbolic: bool = True) -> NCPoly:
    terms: dict[Word, RatFunc] = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[random_word(rng, alphabet, max_degree)] = random_scalar(rng, symbolic)
    return NCPoly(alphabet, terms)


def random_rational(rng: random.Random, lo: int = -4, hi: int = 4, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_q(rng: random.Random) -> Fraction:
    # the only rationals that are roots of unity are 1 and -1
    while True:
        q = random_rational(rng)
        if q not in (0, 1, -1):
            return q


def random_point(rng: random.Random) -> dict[str, Fraction]:
    return {"q": random_q(rng), "r": random_rational(rng), "s": random_rational(rng)}


_ATOMS = ("A", "B", "C", "I", "q", "r", "s", "alpha", "beta", "2", "3", "7")


def random_expression(rng: random.Random, depth: int = 3) -> str:
    """Random text in the expression grammar."""
    if depth <= 0 or rng.random() < 0.25:
        return rng.choice(_ATOMS)
    kind = rng.randrange(7)
    a = random_expression(rng, depth - 1)
    b = random_expression(rng, depth - 1)
    if kind == 0:
        return f"{a} + {b}"
    if kind == 1:
        return f"{a} - {b}"
    if kind == 2:
        return f"{a}*{b}"
    if kind == 3:
        return f"({a})^{rng.randint(0, 3)}"
    if kind == 4:
        return f"[{a}, {b}]"
    if kind == 5:
        return f"(-({a}))"
    return f"({a})/{rng.choice(['2', 'q', '(1 - q)', '(r + s)', '3/5'])}"
