"""Lie polynomials in U_q(r, 0) and U_q(0, s).

The Lie subalgebra generated by A and B has basis A, B, B^n C^m (n >= 0,
m >= 1) and C^m A^k (m, k >= 1), all of which are irreducible words of R.
Membership is therefore decided by normal-form support.  This module also
holds the closed forms for brackets of basis words, the linear map Psi from
L(s,0) to L(0,s), and obstruction reports for candidate algebra maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

from .algebras import (
    AlgebraModel,
    build_model,
    classify_basis_word,
    oracle_three_gen_normal_form,
    w3,
)
from .coeffs import ALPHA, BETA, S, RatFunc
from .freealg import (
    THREE_LETTERS,
    GeneratorMap,
    NCPoly,
    Word,
    add_term,
    bracket,
    render_word,
)

WHICH = ("r0", "0s")


class NotLiePolynomial(ValueError):
    pass


class ReducibleWord(ValueError):
    pass


def ad_power(x: NCPoly, y: NCPoly, n: int, m: AlgebraModel) -> NCPoly:
    """Normal form of (ad x)^n y."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = m.normal_form(y)
    for _ in range(n):
        out = m.normal_form(x * out - out * x)
    return out


def lie_bracket(x: NCPoly, y: NCPoly, m: AlgebraModel) -> NCPoly:
    return m.normal_form(bracket(x, y))


@dataclass(frozen=True, order=True)
class LieBasisWord:
    """``kind`` is "A", "B", "BC" (B^first C^second) or "CA" (C^first A^second)."""

    kind: str
    first: int = 0
    second: int = 0

    def __post_init__(self):
        if self.kind in ("A", "B"):
            ok = self.first == self.second == 0
        elif self.kind == "BC":
            ok = self.first >= 0 and self.second >= 1
        elif self.kind == "CA":
            ok = self.first >= 1 and self.second >= 1
        else:
            ok = False
        if not ok:
            raise ValueError(f"not a Lie basis shape: {self.kind}{(self.first, self.second)}")

    @property
    def word(self) -> Word:
        if self.kind in ("A", "B"):
            return self.kind
        if self.kind == "BC":
            return "B" * self.first + "C" * self.second
        return "C" * self.first + "A" * self.second

    def poly(self) -> NCPoly:
        return w3(self.word)

    def __str__(self):
        return render_word(self.word)


def lie_basis_classify(w: Word, which: str = "r0") -> LieBasisWord | None:
    """Lie basis label of an irreducible word, or None if it is not a basis word.

    The irreducible words of U_q(r,0) and U_q(0,s) coincide, so ``which`` only
    validates the caller's intent.
    """
    if which not in WHICH:
        raise ValueError(f"which must be one of {WHICH}")
    try:
        cls = classify_basis_word(w)
    except ValueError as exc:
        raise ReducibleWord(str(exc)) from None
    if w in ("A", "B"):
        return LieBasisWord(w)
    if cls.shape == "BC" and cls.second >= 1:
        return LieBasisWord("BC", cls.first, cls.second)
    if cls.shape == "CA" and cls.first >= 1:
        return LieBasisWord("CA", cls.first, cls.second)
    return None


def _which(m: AlgebraModel) -> str:
    if m.s.is_zero():
        return "r0"
    if m.r.is_zero():
        return "0s"
    raise ValueError("Lie membership is implemented for U_q(r,0) and U_q(0,s) only")


@dataclass
class MembershipVerdict:
    input: str
    normal_form: NCPoly
    verdict: bool
    offending_words: list[Word]

    def to_json(self) -> dict:
        return {
            "input": self.input,
            "normal_form": self.normal_form.render(),
            "verdict": self.verdict,
            "offending_words": [render_word(w) for w in self.offending_words],
        }


def membership(p: NCPoly, m: AlgebraModel, which: str | None = None, label: str | None = None) -> MembershipVerdict:
    which = which or _which(m)
    nf = m.normal_form(p)
    bad = [w for w in nf.support() if lie_basis_classify(w, which) is None]
    return MembershipVerdict(label if label is not None else p.render(), nf, not bad, bad)


def is_lie_polynomial(p: NCPoly, m: AlgebraModel, which: str | None = None) -> bool:
    return membership(p, m, which).verdict


def lie_basis_words(bound: int, include_generators: bool = True) -> list[LieBasisWord]:
    """Lie basis words with every exponent at most ``bound``."""
    out = [LieBasisWord("A"), LieBasisWord("B")] if include_generators else []
    out += [LieBasisWord("BC", n, m) for n in range(bound + 1) for m in range(1, bound + 1)]
    out += [LieBasisWord("CA", m, k) for m in range(1, bound + 1) for k in range(1, bound + 1)]
    return out


def span_words(p: NCPoly, m: AlgebraModel) -> bool:
    """Support of the normal form lies in {B^l C^m, C^m A^l : m >= 1}."""
    for w in m.normal_form(p).terms:
        cls = classify_basis_word(w)
        if (cls.second if cls.shape == "BC" else cls.first) < 1:
            return False
    return True


# commutator table


def _binomial_sum(m: AlgebraModel, outer: int, qexp: Callable[[int], int], base: RatFunc,
                  word: Callable[[int], Word]) -> NCPoly:
    total = NCPoly.zero(THREE_LETTERS)
    for i in range(outer + 1):
        total = total + (comb(outer, i) * m.q ** qexp(i) * base**i) * w3(word(i))
    return total


def closed_form(left: LieBasisWord, right: LieBasisWord, m: AlgebraModel) -> NCPoly | None:
    """Closed expression for [left, right] in U_q(r, 0), when one is tabulated.

    Both orders are handled through antisymmetry.  Entries that are simply the
    definition of the bracket return None.
    """
    got = _closed_form(left, right, m)
    if got is None:
        flipped = _closed_form(right, left, m)
        if flipped is not None:
            return -flipped
    return got


def _closed_form(x: LieBasisWord, y: LieBasisWord, m: AlgebraModel) -> NCPoly | None:
    q, r = m.q, m.r
    if x == y:
        return NCPoly.zero(THREE_LETTERS)
    if x.kind == "A" and y.kind == "B":
        return w3("C")
    if x.kind == "BC" and y.kind == "BC":
        v, u = x.first, x.second
        w, t = y.first, y.second
        if v == 0 and w == 0:
            return NCPoly.zero(THREE_LETTERS)
        ur, tr = m.qb(u) * r, m.qb(t) * r
        first = _binomial_sum(m, w, lambda i: u * w - u * i, ur, lambda i: "B" * (v + w - i) + "C" * (t + u))
        if v == 0:
            return first - w3("B" * w + "C" * (t + u))
        second = _binomial_sum(m, v, lambda i: t * v - t * i, tr, lambda i: "B" * (w + v - i) + "C" * (t + u))
        return first - second
    if x.kind == "BC" and y.kind == "A":
        t, u = x.first, x.second
        if t == 0:
            return (1 - q**u) * w3("C" * u + "A")
        total = w3("B" * t + "C" * u + "A")
        for i in range(t + 1):
            total = total - (comb(t, i) * q ** (t + u - i) * r**i) * w3("B" * (t - i) + "C" * u + "A")
        return total
    if x.kind == "BC" and y.kind == "B":
        t, u = x.first, x.second
        return (q**u - 1) * w3("B" * (t + 1) + "C" * u) + (m.qb(u) * r) * w3("B" * t + "C" * u)
    if x.kind == "CA" and y.kind == "A":
        u, w = x.first, x.second
        return (1 - q**u) * w3("C" * u + "A" * (w + 1))
    if x.kind == "CA" and y.kind == "BC" and y.first == 0:
        u, w, t = x.first, x.second, y.second
        return (q ** (t * w) - 1) * w3("C" * (t + u) + "A" * w)
    if x.kind == "CA" and y.kind == "CA":
        u, w = x.first, x.second
        t, v = y.first, y.second
        return (q ** (t * w) - q ** (u * v)) * w3("C" * (t + u) + "A" * (v + w))
    return None


@dataclass
class TableEntry:
    left: LieBasisWord
    right: LieBasisWord
    normal_form: NCPoly
    closed: NCPoly | None
    matches: bool | None
    in_lie_span: bool

    @property
    def ok(self) -> bool:
        return self.in_lie_span and self.matches is not False


def commutator_table_entry(left: LieBasisWord, right: LieBasisWord, m: AlgebraModel) -> TableEntry:
    """Bracket of two Lie basis words in U_q(r, 0), checked against the table."""
    if not m.s.is_zero():
        raise ValueError("the commutator table is stated for U_q(r, 0)")
    nf = lie_bracket(left.poly(), right.poly(), m)
    closed = closed_form(left, right, m)
    matches = None if closed is None else m.normal_form(closed) == nf
    return TableEntry(left, right, nf, closed, matches, is_lie_polynomial(nf, m, "r0"))


# Psi


class LieMap:
    """The linear map Psi: L(s,0) -> L(0,s).

    On basis words: A -> -B, B -> -A, C^n -> -C^n, C^u A^v -> -B^v C^u,
    B^v C^u -> -C^u A^v (v >= 1).  It is linear only, not multiplicative.
    """

    def __init__(self, source: AlgebraModel, target: AlgebraModel):
        if not source.s.is_zero() or not target.r.is_zero():
            raise ValueError("Psi maps U_q(s,0) to U_q(0,s)")
        if source.r != target.s or source.q != target.q:
            raise ValueError("source r and target s must agree, as must q")
        self.source = source
        self.target = target

    @staticmethod
    def on_basis(b: LieBasisWord) -> tuple[int, LieBasisWord]:
        if b.kind == "A":
            return -1, LieBasisWord("B")
        if b.kind == "B":
            return -1, LieBasisWord("A")
        if b.kind == "BC" and b.first == 0:
            return -1, b
        if b.kind == "CA":
            return -1, LieBasisWord("BC", b.second, b.first)
        return -1, LieBasisWord("CA", b.second, b.first)

    def __call__(self, p: NCPoly) -> NCPoly:
        nf = self.source.normal_form(p)
        out: dict[Word, RatFunc] = {}
        bad = []
        for w, c in nf.terms.items():
            b = lie_basis_classify(w, "r0")
            if b is None:
                bad.append(render_word(w))
                continue
            sign, img = self.on_basis(b)
            add_term(out, img.word, c * sign)
        if bad:
            raise NotLiePolynomial(f"not a Lie polynomial of L(s,0): offending words {bad}")
        return NCPoly._raw(THREE_LETTERS, out)


def psi_models(s="sym", q="sym") -> tuple[AlgebraModel, AlgebraModel]:
    """Source U_q(s,0) and target U_q(0,s) sharing the parameter s."""
    if s == "sym":
        s = S
    return build_model(r=s, s=0, q=q), build_model(r=0, s=s, q=q)


def psi_apply(p: NCPoly, source: AlgebraModel, target: AlgebraModel) -> NCPoly:
    return LieMap(source, target)(p)


def check_bracket_preservation(x: NCPoly, y: NCPoly, source: AlgebraModel, target: AlgebraModel) -> NCPoly:
    """Normal form of Psi([x,y]) - [Psi(x), Psi(y)] in the target."""
    psi = LieMap(source, target)
    lhs = psi(lie_bracket(x, y, source))
    rhs = lie_bracket(psi(x), psi(y), target)
    return target.normal_form(lhs - rhs)


def psi_index_bijection(bound: int) -> bool:
    """Psi permutes the Lie basis labels with exponents <= bound."""
    domain = lie_basis_words(bound)
    image = [LieMap.on_basis(b)[1] for b in domain]
    return len(set(image)) == len(domain) and set(image) == set(domain)


# explicit bracket expressions for basis words


class LieRecipe:
    """Builds each Lie basis word of L(r,0) from two generators by brackets.

    ``gen_a``, ``gen_b`` are the images used for A and B and ``br`` is the
    bracket of the ambient algebra.  With the identity images in U_q(r,0)
    this reproduces the basis words; with A -> -B, B -> -A in U_q(0,r)
    it produces Psi of them, which shows they lie in L(0,r).
    """

    def __init__(self, gen_a: NCPoly, gen_b: NCPoly, br: Callable[[NCPoly, NCPoly], NCPoly],
                 q: RatFunc, r: RatFunc):
        self.a, self.b, self.br = gen_a, gen_b, br
        self.q, self.r = q, r
        self._memo: dict[LieBasisWord, NCPoly] = {}

    def qb(self, n: int) -> RatFunc:
        return sum((self.q**i for i in range(n)), RatFunc(0))

    def build(self, target: LieBasisWord) -> NCPoly:
        hit = self._memo.get(target)
        if hit is not None:
            return hit
        q, r = self.q, self.r
        kind, x, y = target.kind, target.first, target.second
        if kind == "A":
            out = self.a
        elif kind == "B":
            out = self.b
        elif kind == "BC" and x == 0 and y == 1:
            out = self.br(self.a, self.b)
        elif kind == "BC" and x == 0:
            # q^m [C^m A, B] = {m+1} C^(m+1)
            mm = y - 1
            out = self.br(self.build(LieBasisWord("CA", mm, 1)), self.b) * (q**mm / self.qb(y))
        elif kind == "BC":
            # [B^t C^u, B] = (q^u - 1) B^(t+1) C^u + {u} r B^t C^u
            prev = self.build(LieBasisWord("BC", x - 1, y))
            out = (self.br(prev, self.b) - (self.qb(y) * r) * prev) / (q**y - 1)
        elif y == 1:
            # [C^m, A] = (1 - q^m) C^m A
            out = self.br(self.build(LieBasisWord("BC", 0, x)), self.a) / (1 - q**x)
        else:
            # [C^m A^w, A] = (1 - q^m) C^m A^(w+1)
            out = self.br(self.build(LieBasisWord("CA", x, y - 1)), self.a) / (1 - q**x)
        self._memo[target] = out
        return out


def reconstruct_in_target(bound: int, source: AlgebraModel, target: AlgebraModel) -> list[tuple[LieBasisWord, bool, bool]]:
    """For each basis word b, (b, recipe gives b in source, recipe on -B,-A gives Psi(b) in target)."""
    psi = LieMap(source, target)
    src = LieRecipe(w3("A"), w3("B"), lambda x, y: lie_bracket(x, y, source), source.q, source.r)
    tgt = LieRecipe(-w3("B"), -w3("A"), lambda x, y: lie_bracket(x, y, target), source.q, source.r)
    out = []
    for b in lie_basis_words(bound):
        ok_src = source.normal_form(src.build(b)) == b.poly()
        ok_tgt = target.normal_form(tgt.build(b)) == psi(b.poly())
        out.append((b, ok_src, ok_tgt))
    return out


# obstruction reports


@dataclass
class CoefficientComparison:
    word: Word
    via_source: RatFunc
    via_target: RatFunc

    @property
    def difference(self) -> RatFunc:
        return self.via_source - self.via_target


@dataclass
class ProbeResult:
    x: Word
    y: Word
    residual: NCPoly
    coefficients: list[CoefficientComparison]
    oracle_agrees: bool

    def to_json(self) -> dict:
        return {
            "probe": [render_word(self.x), render_word(self.y)],
            "residual": self.residual.render(),
            "coefficients": [
                {
                    "word": render_word(c.word),
                    "image_of_product": c.via_source.render(),
                    "product_of_images": c.via_target.render(),
                    "difference": c.difference.render(),
                }
                for c in self.coefficients
            ],
            "oracle_agrees": self.oracle_agrees,
        }


@dataclass
class ClaimedValue:
    """A coefficient value asserted elsewhere, set against the computed one."""

    label: str
    word: Word
    claimed: RatFunc
    computed: RatFunc

    @property
    def agrees(self) -> bool:
        return self.claimed == self.computed

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "word": render_word(self.word),
            "claimed": self.claimed.render(),
            "computed": self.computed.render(),
            "agrees": self.agrees,
        }


@dataclass
class ObstructionReport:
    name: str
    source: AlgebraModel
    target: AlgebraModel
    images: dict[str, NCPoly]
    relation_residual: NCPoly
    relation_residual_oracle: NCPoly
    constraints: list[RatFunc]
    constraints_three_letter: list[RatFunc]
    probes: list[ProbeResult] = field(default_factory=list)
    claims: list[ClaimedValue] = field(default_factory=list)

    @property
    def relation_preserved(self) -> bool:
        return self.relation_residual.is_zero()

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "source": self.source.params,
            "target": self.target.params,
            "images": {k: v.render() for k, v in self.images.items()},
            "relation_residual": self.relation_residual.render(),
            "relation_residual_two_letter": self.relation_residual_oracle.render(),
            "constraints": [c.render() for c in self.constraints],
            "constraints_three_letter": [c.render() for c in self.constraints_three_letter],
            "probe_residuals": [p.to_json() for p in self.probes],
            "claims": [c.to_json() for c in self.claims],
        }


def _extend_images(images: dict[str, NCPoly]) -> GeneratorMap:
    a, b = images["A"], images["B"]
    return GeneratorMap(THREE_LETTERS, THREE_LETTERS, {"A": a, "B": b, "C": a * b - b * a})


def homomorphism_obstruction(
    source: AlgebraModel,
    images: dict[str, NCPoly],
    target: AlgebraModel,
    probes: Sequence[tuple[Word, Word]] = (),
    name: str = "custom",
) -> ObstructionReport:
    """Test whether A, B -> images respects the relations of ``source``.

    The defining relation AB - qBA - rA - sB is pushed through the map and
    reduced in the target, both by the oracle (basis B^i A^j) and by R.  The
    coefficients of the oracle form are the constraints.  For each probe
    (x, y) the map applied to the source normal form of xy is compared with
    the product of the images of x and y.
    """
    phi = _extend_images(images)
    relation = w3("AB") - source.q * w3("BA") - source.r * w3("A") - source.s * w3("B")
    image = phi(relation)
    residual = target.normal_form(image)
    residual_oracle = target.oracle.normal_form(target.eliminate(image))
    constraints = [c for _, c in residual_oracle.items()]
    constraints_r = [c for _, c in residual.items()]

    results = []
    for x, y in probes:
        via_source = target.normal_form(phi(source.normal_form(w3(x + y))))
        via_target = target.normal_form(phi(w3(x)) * phi(w3(y)))
        # independent path: reduce with the oracle only and re-express
        o_source = oracle_three_gen_normal_form(
            phi(oracle_three_gen_normal_form(w3(x + y), source)), target
        )
        o_target = oracle_three_gen_normal_form(phi(w3(x)) * phi(w3(y)), target)
        words = sorted(set(via_source.terms) | set(via_target.terms), key=THREE_LETTERS.sort_key)
        coeffs = [CoefficientComparison(w, via_source.coefficient(w), via_target.coefficient(w)) for w in words]
        results.append(
            ProbeResult(x, y, via_source - via_target, coeffs,
                        o_source == via_source and o_target == via_target)
        )
    return ObstructionReport(name, source, target, dict(images), residual, residual_oracle,
                             constraints, constraints_r, results)


def _claims_rcor(source: AlgebraModel, report: ObstructionReport) -> list[ClaimedValue]:
    q, r = source.q, source.r
    nf = source.normal_form(w3("CAABC"))
    probe = report.probes[0]
    c3a = next((c for c in probe.coefficients if c.word == "CCCA"), None)
    diff = c3a.difference if c3a else RatFunc(0)
    # the claimed difference r^4 q^3/(1-q) - r^3 q^3/(1-q), up to the factor -q^3/(1-q)
    return [
        ClaimedValue("source normal form of C*A^2*B*C, coefficient", "CCCA",
                     -r * q**3 / (1 - q), nf.coefficient("CCCA")),
        ClaimedValue("image of product minus product of images, coefficient", "CCCA",
                     (r**4 - r**3) * (-(q**3)) / (1 - q), diff),
        ClaimedValue("same difference divided by -q^3/(1-q)", "CCCA",
                     r**3 * (r - 1), diff / (-(q**3) / (1 - q))),
    ]


OBSTRUCTION_PRESETS = ("rcor", "scor", "noiso")


def obstruction_preset(name: str, probes: Sequence[tuple[Word, Word]] | None = None) -> ObstructionReport:
    """The three candidate maps studied for U_q(r,0), U_q(0,s) and Psi's algebra analog."""
    if name == "rcor":
        source, target = build_model(s=0), build_model(r=1, s=0)
        images = {"A": w3("A"), "B": source.r * w3("B")}
        report = homomorphism_obstruction(source, images, target, probes or [("CAA", "BC")], name)
        if report.probes and report.probes[0].x + report.probes[0].y == "CAABC":
            report.claims = _claims_rcor(source, report)
        return report
    if name == "scor":
        source, target = build_model(r=0), build_model(r=0, s=1)
        images = {"A": source.s * w3("A"), "B": w3("B")}
        return homomorphism_obstruction(source, images, target, probes or [("CA", "BBC")], name)
    if name == "noiso":
        source, target = build_model(r="s", s=0), build_model(r=0, s="s")
        images = {"A": BETA * w3("B"), "B": ALPHA * w3("A")}
        report = homomorphism_obstruction(source, images, target, probes or [], name)
        q, s = source.q, source.r
        scale = -(ALPHA * BETA).inverse()
        res = report.relation_residual_oracle
        report.claims = [
            ClaimedValue("coefficient times -1/(alpha*beta)", "BA", q**2 - 1, res.coefficient("BA") * scale),
            ClaimedValue("coefficient times -1/(alpha*beta)", "B", s * (ALPHA * q + 1) / ALPHA,
                         res.coefficient("B") * scale),
        ]
        return report
    raise ValueError(f"unknown preset {name!r}; expected one of {OBSTRUCTION_PRESETS}")


__all__ = [
    "ad_power",
    "lie_bracket",
    "LieBasisWord",
    "lie_basis_classify",
    "is_lie_polynomial",
    "membership",
    "MembershipVerdict",
    "lie_basis_words",
    "span_words",
    "closed_form",
    "commutator_table_entry",
    "TableEntry",
    "LieMap",
    "psi_models",
    "psi_apply",
    "check_bracket_preservation",
    "psi_index_bijection",
    "LieRecipe",
    "reconstruct_in_target",
    "homomorphism_obstruction",
    "ObstructionReport",
    "ProbeResult",
    "ClaimedValue",
    "obstruction_preset",
    "OBSTRUCTION_PRESETS",
    "NotLiePolynomial",
    "ReducibleWord",
]
