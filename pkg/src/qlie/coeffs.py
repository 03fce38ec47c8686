"""Exact arithmetic in the coefficient field Q(q, r, s, alpha, beta).

Polynomials are FLINT ``fmpq_mpoly`` values; this module owns the
canonical form on top of them:

* numerator and denominator are coprime,
* the denominator's leading coefficient under graded-lexicographic order
  (q > r > s > alpha > beta) is one,
* zero is ``0/1``.

Equality of canonical forms is the identity test used everywhere else.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

import flint

VARIABLES = ("q", "r", "s", "alpha", "beta")
_NVARS = len(VARIABLES)
_CTX = flint.fmpq_mpoly_ctx.get(VARIABLES, "deglex")
_ZERO_EXP = (0,) * _NVARS


class RootOfUnityError(ValueError):
    """A specialization put q at zero or at a root of unity of small order."""


def _const_poly(value) -> flint.fmpq_mpoly:
    value = Fraction(value)
    if value == 0:
        return _CTX.from_dict({})
    return _CTX.from_dict({_ZERO_EXP: flint.fmpq(value.numerator, value.denominator)})


_P_ZERO = _const_poly(0)
_P_ONE = _const_poly(1)


def _canonical(num, den):
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return _P_ZERO, _P_ONE
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


Scalar = Union["RatFunc", int, Fraction]


class RatFunc:
    """Immutable element of Q(q, r, s, alpha, beta) in canonical form."""

    __slots__ = ("num", "den", "_text")

    def __init__(self, num=0, den=None, *, canonical: bool = False):
        if not isinstance(num, flint.fmpq_mpoly):
            num = _const_poly(num)
        if den is None:
            den = _P_ONE
        elif not isinstance(den, flint.fmpq_mpoly):
            den = _const_poly(den)
        if not canonical:
            num, den = _canonical(num, den)
        self.num = num
        self.den = den
        self._text = None

    # construction helpers

    @classmethod
    def var(cls, name: str) -> "RatFunc":
        return cls(_CTX.gen(VARIABLES.index(name)), canonical=True)

    @classmethod
    def coerce(cls, x: Scalar) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        from .parse import parse_scalar

        return parse_scalar(text)

    # predicates

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def variables(self) -> set[str]:
        used = set()
        for poly in (self.num, self.den):
            for monom in poly.monoms():
                used.update(VARIABLES[i] for i, e in enumerate(monom) if e)
        return used

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _fraction(self.num.leading_coefficient()) if not self.is_zero() else Fraction(0)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = RatFunc(other)
        a, b = self, other
        if a.num.is_zero():
            return b
        if b.num.is_zero():
            return a
        if a.den.is_one() and b.den.is_one():
            num = a.num + b.num
            if num.is_zero():
                return ZERO
            return RatFunc(num, _P_ONE, canonical=True)
        if a.den == b.den:
            return RatFunc(a.num + b.num, a.den)
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, canonical=True)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = RatFunc(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = RatFunc(other)
        a, b = self, other
        if a.num.is_zero() or b.num.is_zero():
            return ZERO
        if a.den.is_one() and b.den.is_one():
            return RatFunc(a.num * b.num, _P_ONE, canonical=True)
        # cross-cancel first so the product is already reduced
        n1, d2 = _cancel(a.num, b.den)
        n2, d1 = _cancel(b.num, a.den)
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFunc(num, den, canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = RatFunc(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, canonical=True)

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(self.render())

    def __bool__(self):
        return not self.num.is_zero()

    # specialization

    def specialize(self, point: Mapping[str, object]) -> "RatFunc":
        """Substitute rational values for some of the variables."""
        values = {k: _to_fmpq(v) for k, v in point.items() if v is not None}
        if not values:
            return self
        num = self.num.subs(values)
        den = self.den.subs(values)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator of {self} vanishes at {dict(point)}")
        return RatFunc(num, den)

    # text

    def render(self) -> str:
        if self._text is None:
            num = _render_poly(self.num)
            if self.den.is_one():
                self._text = num
            else:
                den = _render_poly(self.den)
                self._text = f"{_wrap(self.num, num)}/{_wrap(self.den, den)}"
        return self._text

    __str__ = render

    def __repr__(self):
        return f"RatFunc({self.render()!r})"


def _cancel(num, den):
    if den.is_constant() or num.is_constant():
        return num, den
    g = num.gcd(den)
    if g.is_one():
        return num, den
    return num / g, den / g


def _fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _to_fmpq(value) -> flint.fmpq:
    if isinstance(value, RatFunc):
        value = value.constant_value()
    value = Fraction(value)
    return flint.fmpq(value.numerator, value.denominator)


def _render_monomial(monom) -> str:
    parts = []
    for name, e in zip(VARIABLES, monom):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _render_poly(p) -> str:
    if p.is_zero():
        return "0"
    out = []
    for monom, c in p.terms():
        c = _fraction(c)
        mon = _render_monomial(monom)
        mag = abs(c)
        if mon and mag == 1:
            body = mon
        elif mon:
            body = f"{mag}*{mon}"
        else:
            body = str(mag)
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


def _wrap(p, text: str) -> str:
    # a bare variable power or a nonnegative integer needs no parentheses
    terms = list(p.terms())
    if len(terms) == 1:
        monom, c = terms[0]
        if c == 1 and sum(1 for e in monom if e) == 1:
            return text
        if not any(monom) and c >= 0 and _fraction(c).denominator == 1:
            return text
    return f"({text})"


ZERO = RatFunc(0)
ONE = RatFunc(1)
Q = RatFunc.var("q")
R = RatFunc.var("r")
S = RatFunc.var("s")
ALPHA = RatFunc.var("alpha")
BETA = RatFunc.var("beta")


def ratfunc_arith(a: Scalar, b: Scalar, op: str) -> RatFunc:
    """Apply one field operation (``add``, ``sub``, ``mul`` or ``div``)."""
    a, b = RatFunc.coerce(a), RatFunc.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


@lru_cache(maxsize=None)
def _q_bracket_q(n: int) -> RatFunc:
    return RatFunc(sum((_CTX.gen(0) ** t for t in range(1, n)), _P_ONE), canonical=True)


def q_bracket(n: int, base: Scalar | None = None) -> RatFunc:
    """The q-number ``{n} = 1 + z + ... + z^(n-1)``; zero for ``n <= 0``."""
    if n <= 0:
        return ZERO
    if base is None or base is Q:
        return _q_bracket_q(n)
    z = RatFunc.coerce(base)
    total, power = ZERO, ONE
    for _ in range(n):
        total = total + power
        power = power * z
    return total


def check_q_guard(q_value, guard_order: int) -> None:
    """Raise :class:`RootOfUnityError` unless q != 0 and q^m != 1 for m <= guard_order."""
    qv = Fraction(q_value) if not isinstance(q_value, RatFunc) else q_value.constant_value()
    if qv == 0:
        raise RootOfUnityError("q must be nonzero")
    power = Fraction(1)
    for m in range(1, guard_order + 1):
        power *= qv
        if power == 1:
            raise RootOfUnityError(f"q = {qv} satisfies q^{m} = 1")


def evaluate(f: RatFunc, point: Mapping[str, object], guard_order: int = 12) -> Fraction:
    """Exact value of ``f`` at a rational point.

    Every variable occurring in ``f`` must be assigned.  When q is assigned it
    is checked against the root-of-unity guard first.
    """
    if "q" in point and point["q"] is not None:
        check_q_guard(point["q"], guard_order)
    missing = f.variables() - {k for k, v in point.items() if v is not None}
    if missing:
        raise ValueError(f"no value given for {sorted(missing)}")
    return f.specialize(point).constant_value()
