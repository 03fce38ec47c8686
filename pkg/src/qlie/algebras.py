"""Concrete models of U_q(r, s) and its specializations.

Each :class:`AlgebraModel` carries two independent ways of computing in the
same quotient:

* the three-letter system R on {A, B, C} (rules sigma1..sigma4 and the
  family tau_k), whose irreducible words are B^l C^m and C^m A^t;
* the two-letter oracle, the single rule AB -> qBA + rA + sB, whose
  irreducible words are B^i A^j.  It has no ambiguities, so it is the
  ground truth that the three-letter engine is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .coeffs import ONE, Q, R, S, ZERO, RatFunc, check_q_guard, q_bracket
from .freealg import (
    THREE_LETTERS,
    TWO_LETTERS,
    GeneratorMap,
    NCPoly,
    Word,
    add_term,
    letter,
    render_word,
)
from .rewrite import ReductionRule, ReductionSystem, RuleFamily

ParamSpec = Union[str, int, Fraction, RatFunc, None]

A2, B2 = letter(TWO_LETTERS, "A"), letter(TWO_LETTERS, "B")
A3, B3, C3 = (letter(THREE_LETTERS, ch) for ch in "ABC")


def w3(word: Word, coeff=1) -> NCPoly:
    return NCPoly.word(THREE_LETTERS, word, coeff)


def w2(word: Word, coeff=1) -> NCPoly:
    return NCPoly.word(TWO_LETTERS, word, coeff)


def _param(spec: ParamSpec, symbol: RatFunc) -> RatFunc:
    if spec is None or spec == "sym":
        return symbol
    if isinstance(spec, RatFunc):
        return spec
    if isinstance(spec, str):
        return RatFunc.parse(spec)
    return RatFunc(Fraction(spec))


class AlgebraModel:
    """U_q(r, s) with concrete (symbolic or rational) q, r, s."""

    def __init__(self, q: RatFunc, r: RatFunc, s: RatFunc, name: str | None = None):
        self.q, self.r, self.s = q, r, s
        self.name = name or f"U_q({r.render()},{s.render()})"
        self.system = ReductionSystem(
            THREE_LETTERS, self._sigma_rules(), [self._tau_family()], name=self.name
        )
        self.oracle = ReductionSystem(
            TWO_LETTERS,
            [ReductionRule("zeta1", "AB", q * w2("BA") + r * A2 + s * B2)],
            name=self.name + " oracle",
        )
        self.eliminate_c = GeneratorMap(
            THREE_LETTERS, TWO_LETTERS, {"A": A2, "B": B2, "C": w2("AB") - w2("BA")}
        )
        self.embed = GeneratorMap(TWO_LETTERS, THREE_LETTERS, {"A": A3, "B": B3})
        self._images: dict[Word, NCPoly] = {}

    def __repr__(self):
        return f"AlgebraModel({self.name})"

    def qb(self, n: int) -> RatFunc:
        return q_bracket(n, self.q)

    @property
    def params(self) -> dict[str, str]:
        return {"q": self.q.render(), "r": self.r.render(), "s": self.s.render()}

    def _sigma_rules(self) -> list[ReductionRule]:
        q, r, s = self.q, self.r, self.s
        inv = (1 - q).inverse()
        return [
            ReductionRule("sigma1", "AB", (r * A3 + s * B3 - q * C3) * inv),
            ReductionRule("sigma2", "AC", q * w3("CA") + s * C3),
            ReductionRule("sigma3", "BA", (r * A3 + s * B3 - C3) * inv),
            ReductionRule("sigma4", "CB", q * w3("BC") + r * C3),
        ]

    def tau_replacement(self, k: int) -> NCPoly:
        q, r, s = self.q, self.r, self.s
        qk = q**k
        den = (qk * (1 - q)).inverse()
        ck = "C" * k
        return (
            w3(ck + "A", qk * r) + w3("B" + ck, qk * s) + w3(ck, self.qb(k) * r * s) - w3(ck + "C")
        ) * den

    def _tau_family(self) -> RuleFamily:
        return RuleFamily("tau", "B", "C", "A", self.tau_replacement)

    # conversions and normal forms

    def eliminate(self, p: NCPoly) -> NCPoly:
        return self.eliminate_c(p)

    def normal_form(self, p: NCPoly, strategy: str = "leftmost", **kwargs) -> NCPoly:
        if p.alphabet == TWO_LETTERS:
            return self.oracle.normal_form(p, **kwargs)
        return self.system.normal_form(p, strategy, **kwargs)

    def oracle_image(self, w: Word) -> NCPoly:
        """Oracle normal form of a three-letter word after C -> AB - BA."""
        hit = self._images.get(w)
        if hit is None:
            hit = self.oracle.normal_form(self.eliminate_c.image_of_word(w))
            self._images[w] = hit
        return hit


def build_model(r: ParamSpec = "sym", s: ParamSpec = "sym", q: ParamSpec = "sym", *,
                guard_order: int = 12, name: str | None = None) -> AlgebraModel:
    """Model with r, s (and optionally q) symbolic or specialized to rationals."""
    qv = _param(q, Q)
    if qv.is_constant():
        check_q_guard(qv, guard_order)
    elif qv != Q:
        raise ValueError("q must be symbolic or a rational number")
    return AlgebraModel(qv, _param(r, R), _param(s, S), name)


MODEL_KINDS = ("uqrs", "uq_r0", "uq_0s")


def model_by_kind(kind: str, r: ParamSpec = "sym", s: ParamSpec = "sym", q: ParamSpec = "sym",
                  guard_order: int = 12) -> AlgebraModel:
    if kind == "uqrs":
        return build_model(r, s, q, guard_order=guard_order)
    if kind == "uq_r0":
        return build_model(r, 0, q, guard_order=guard_order)
    if kind == "uq_0s":
        return build_model(0, s, q, guard_order=guard_order)
    raise ValueError(f"unknown model {kind!r}; expected one of {MODEL_KINDS}")


def oracle_normal_form(p: NCPoly, m: AlgebraModel) -> NCPoly:
    if p.alphabet != TWO_LETTERS:
        raise ValueError("the oracle works over {A, B}")
    return m.oracle.normal_form(p)


def three_gen_normal_form(p: NCPoly, m: AlgebraModel, strategy: str = "leftmost", **kwargs) -> NCPoly:
    if p.alphabet != THREE_LETTERS:
        raise ValueError("expected a polynomial over {A, B, C}")
    return m.system.normal_form(p, strategy, **kwargs)


@dataclass(frozen=True)
class BasisWordClass:
    """Shape of an irreducible word: ``BC`` is B^l C^m, ``CA`` is C^m A^t with t >= 1."""

    shape: str
    first: int
    second: int

    @property
    def word(self) -> Word:
        if self.shape == "BC":
            return "B" * self.first + "C" * self.second
        return "C" * self.first + "A" * self.second


def classify_basis_word(w: Word) -> BasisWordClass:
    l = len(w) - len(w.lstrip("B"))
    rest = w[l:]
    m = len(rest) - len(rest.lstrip("C"))
    t = len(rest) - m
    if rest[m:] != "A" * t or (l and t):
        raise ValueError(f"{render_word(w)} is not an irreducible word of R")
    if t:
        return BasisWordClass("CA", m, t)
    return BasisWordClass("BC", l, m)


def residual(lhs: NCPoly, rhs: NCPoly, m: AlgebraModel) -> NCPoly:
    """Normal form of ``lhs - rhs`` (oracle for {A,B}, R for {A,B,C})."""
    return m.normal_form(lhs - rhs)


def verify_identity(lhs: NCPoly, rhs: NCPoly, m: AlgebraModel) -> bool:
    return residual(lhs, rhs, m).is_zero()


def cross_validate(p: NCPoly, m: AlgebraModel) -> bool:
    """R and the oracle agree on ``p``: both sides pushed through C -> AB - BA."""
    direct = m.oracle.normal_form(m.eliminate(p))
    via_r = m.oracle.normal_form(m.eliminate(three_gen_normal_form(p, m)))
    return direct == via_r


def reexpress(p: NCPoly, m: AlgebraModel) -> NCPoly:
    """Rewrite an oracle normal form in the basis {B^l C^m, C^m A^t}.

    Uses only the oracle.  The image of B^l C^m (resp. C^m A^t) has a single
    top-degree word B^(l+m) A^m (resp. B^m A^(m+t)), so peeling off the
    highest-degree word each round is a triangular solve.
    """
    if p.alphabet != TWO_LETTERS:
        raise ValueError("expected a polynomial over {A, B}")
    remaining = dict(m.oracle.normal_form(p).terms)
    out: dict[Word, RatFunc] = {}
    while remaining:
        x = max(remaining, key=TWO_LETTERS.sort_key)
        i = x.count("B")
        j = len(x) - i
        basis = "B" * (i - j) + "C" * j if i >= j else "C" * i + "A" * (j - i)
        image = m.oracle_image(basis)
        tops = [w for w in image.terms if len(w) == len(x)]
        if tops != [x]:
            raise ArithmeticError(f"image of {render_word(basis)} is not triangular")
        c = remaining[x] / image.terms[x]
        add_term(out, basis, c)
        for w, d in image.terms.items():
            add_term(remaining, w, -c * d)
    return NCPoly._raw(THREE_LETTERS, out)


def oracle_three_gen_normal_form(p: NCPoly, m: AlgebraModel) -> NCPoly:
    """Three-letter normal form computed without R: eliminate C, reduce, re-express."""
    return reexpress(m.eliminate(p), m)


# presentation certificates


@dataclass
class PresentationCertificate:
    name: str
    left: NCPoly
    right: NCPoly

    @property
    def residual(self) -> NCPoly:
        return self.left - self.right

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()


def relation_elements(m: AlgebraModel) -> dict[str, object]:
    """The generators xi1..xi4, xi5(k), zeta1, zeta2 as free-algebra elements."""
    q, r, s = m.q, m.r, m.s
    inv = (1 - q).inverse()
    return {
        "xi1": w3("AB") - (r * A3 + s * B3 - q * C3) * inv,
        "xi2": w3("AC") - q * w3("CA") - s * C3,
        "xi3": w3("BA") - (r * A3 + s * B3 - C3) * inv,
        "xi4": w3("CB") - q * w3("BC") - r * C3,
        "xi5": lambda k: w3("B" + "C" * k + "A") - m.tau_replacement(k),
        "zeta1": w3("AB") - q * w3("BA") - r * A3 - s * B3,
        "zeta2": C3 - w3("AB") + w3("BA"),
    }


def xi2_sum(m: AlgebraModel, h: int) -> NCPoly:
    """sum_{i=1}^h q^(i-1) C^(i-1) xi2 C^(h-i), expanded in the free algebra."""
    xi2 = relation_elements(m)["xi2"]
    total = NCPoly.zero(THREE_LETTERS)
    for i in range(1, h + 1):
        total = total + (m.q ** (i - 1)) * (w3("C" * (i - 1)) * xi2 * w3("C" * (h - i)))
    return total


def presentation_certificates(m: AlgebraModel, k_max: int) -> list[PresentationCertificate]:
    """Free-algebra identities showing the two presentations generate the same ideal.

    No rewriting is involved: each certificate compares expanded polynomials.
    The xi2 and xi4 combinations carry a ``- s*zeta2`` / ``- r*zeta2`` term;
    without it they only agree modulo zeta2 (see :func:`zeta2_free_combinations`).
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    g = relation_elements(m)
    q, r, s = m.q, m.r, m.s
    x1, x2, x3, x4, z1, z2 = (g[n] for n in ("xi1", "xi2", "xi3", "xi4", "zeta1", "zeta2"))
    certs = [
        PresentationCertificate("xi3 - xi1 = zeta2", x3 - x1, z2),
        PresentationCertificate("xi1 - q*xi3 = zeta1", x1 - q * x3, z1),
        PresentationCertificate("(zeta1 + q*zeta2)/(1-q) = xi1", (z1 + q * z2) / (1 - q), x1),
        PresentationCertificate(
            "A*zeta1 - zeta1*A + A*zeta2 - q*zeta2*A - s*zeta2 = xi2",
            A3 * z1 - z1 * A3 + A3 * z2 - q * (z2 * A3) - s * z2,
            x2,
        ),
        PresentationCertificate("(zeta2 + zeta1)/(1-q) = xi3", (z2 + z1) / (1 - q), x3),
        PresentationCertificate(
            "zeta1*B - B*zeta1 + zeta2*B - q*B*zeta2 - r*zeta2 = xi4",
            z1 * B3 - B3 * z1 + z2 * B3 - q * (B3 * z2) - r * z2,
            x4,
        ),
    ]
    for k in range(1, k_max + 1):
        ck = w3("C" * k)
        summed = xi2_sum(m, k)
        left = (1 - q) * (x3 * ck) + r * summed - (1 - q) * (B3 * summed)
        certs.append(
            PresentationCertificate(
                f"xi5({k}) combination", left, (q**k) * (1 - q) * g["xi5"](k)
            )
        )
    return certs


def zeta2_free_combinations(m: AlgebraModel) -> list[PresentationCertificate]:
    """The xi2/xi4 combinations without the zeta2 correction.

    Their residuals are ``s*zeta2`` and ``r*zeta2``: the combinations hold in
    the quotient but not in the free algebra unless s (resp. r) vanishes.
    """
    g = relation_elements(m)
    q = m.q
    z1, z2 = g["zeta1"], g["zeta2"]
    return [
        PresentationCertificate(
            "A*zeta1 - zeta1*A + A*zeta2 - q*zeta2*A = xi2",
            A3 * z1 - z1 * A3 + A3 * z2 - q * (z2 * A3),
            g["xi2"],
        ),
        PresentationCertificate(
            "zeta1*B - B*zeta1 + zeta2*B - q*B*zeta2 = xi4",
            z1 * B3 - B3 * z1 + z2 * B3 - q * (B3 * z2),
            g["xi4"],
        ),
    ]


def specialize_poly(p: NCPoly, point) -> NCPoly:
    """Substitute rational values into every coefficient."""
    out: dict[Word, RatFunc] = {}
    for w, c in p.terms.items():
        add_term(out, w, c.specialize(point))
    return NCPoly._raw(p.alphabet, out)


__all__ = [
    "AlgebraModel",
    "BasisWordClass",
    "PresentationCertificate",
    "build_model",
    "model_by_kind",
    "oracle_normal_form",
    "three_gen_normal_form",
    "classify_basis_word",
    "verify_identity",
    "residual",
    "cross_validate",
    "reexpress",
    "oracle_three_gen_normal_form",
    "presentation_certificates",
    "zeta2_free_combinations",
    "xi2_sum",
    "specialize_poly",
    "ONE",
    "ZERO",
]
