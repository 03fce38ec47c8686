"""Verification batches shared by the CLI and the test suite.

Each batch returns a list of :class:`CheckResult` rows.  A row passes when
every residual it reports is exactly zero (or, for obstruction and
discrepancy rows, when the engine and the two-letter oracle agree).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .algebras import (
    AlgebraModel,
    build_model,
    classify_basis_word,
    cross_validate,
    presentation_certificates,
    specialize_poly,
    w2,
    w3,
    xi2_sum,
    zeta2_free_combinations,
)
from .coeffs import RatFunc, check_q_guard
from .freealg import THREE_LETTERS, TWO_LETTERS, NCPoly, render_word
from .liepoly import (
    LieMap,
    ad_power,
    check_bracket_preservation,
    commutator_table_entry,
    lie_basis_words,
    lie_bracket,
    membership,
    obstruction_preset,
    psi_index_bijection,
    psi_models,
    reconstruct_in_target,
    span_words,
)
from .rewrite import STRATEGIES, check_resolvable, enumerate_ambiguities
from .sampling import random_ncpoly, random_point

DEFAULT_BOUNDS = {"n": 6, "h": 6, "m": 6, "k": 6, "e": 4, "lie": 3, "psi": 6}


@dataclass
class CheckResult:
    name: str
    params: dict = field(default_factory=dict)
    passed: bool = True
    detail: str = ""
    data: object = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        out = {"name": self.name, "params": self.params, "status": self.status, "detail": self.detail}
        if self.data is not None:
            out["data"] = self.data
        return out

    def line(self) -> str:
        params = ",".join(f"{k}={v}" for k, v in self.params.items())
        head = f"{self.status.upper():4} {self.name}"
        if params:
            head += f" [{params}]"
        return f"{head}: {self.detail}" if self.detail else head


def _residual_row(name: str, params: dict, res: NCPoly) -> CheckResult:
    return CheckResult(name, params, res.is_zero(), "residual 0" if res.is_zero() else f"residual {res.render()}")


def bounds_with(overrides: dict | None) -> dict:
    out = dict(DEFAULT_BOUNDS)
    out.update(overrides or {})
    return out


# rewriting


def ambiguity_suite(m: AlgebraModel, k_max: int, strategy: str = "leftmost") -> list[CheckResult]:
    rows = []
    found = enumerate_ambiguities(m.system, k_max)
    inclusions = sum(a.kind == "inclusion" for a in found)
    expected = 5 + 4 * k_max
    rows.append(
        CheckResult("ambiguity count", {"kmax": k_max}, len(found) == expected and inclusions == 0,
                    f"{len(found)} ambiguities ({inclusions} inclusions), expected {expected}")
    )
    for a in found:
        rep = check_resolvable(a, m.system, strategy)
        detail = "resolved" if rep.resolved else f"left {rep.left.render()} != right {rep.right.render()}"
        rows.append(CheckResult(f"resolve {a.label()}", {"kind": a.kind}, rep.resolved, detail))
    return rows


def basis_suite(m: AlgebraModel, samples: int = 200, seed: int = 0, max_degree: int = 6) -> list[CheckResult]:
    rng = random.Random(seed)
    rows = []
    for i in range(samples):
        p = random_ncpoly(rng, THREE_LETTERS, max_degree, 6)
        forms = [m.system.normal_form(p, s) for s in STRATEGIES]
        shapes_ok = True
        for w in forms[0].terms:
            try:
                classify_basis_word(w)
            except ValueError:
                shapes_ok = False
        agree = forms[0] == forms[1]
        detail = f"{len(forms[0])} basis words" if shapes_ok else "support outside B^l C^m, C^m A^t"
        if not agree:
            detail += "; strategies disagree"
        rows.append(CheckResult("normal form in basis", {"sample": i}, shapes_ok and agree, detail))
    return rows


def oracle_suite(m: AlgebraModel, samples: int = 200, seed: int = 1, max_degree: int = 6) -> list[CheckResult]:
    rng = random.Random(seed)
    rows = []
    for i in range(samples):
        p = random_ncpoly(rng, THREE_LETTERS, max_degree, 6)
        ok = cross_validate(p, m)
        rows.append(CheckResult("oracle agreement", {"sample": i}, ok, "agree" if ok else f"disagree on {p.render()}"))
    return rows


def specialization_suite(samples: int = 50, points: int = 5, seed: int = 2, guard_order: int = 12,
                         max_degree: int = 5) -> list[CheckResult]:
    """Normalize-then-evaluate against evaluate-then-normalize."""
    rng = random.Random(seed)
    sym = build_model()
    pts = [random_point(rng) for _ in range(points)]
    models = []
    for pt in pts:
        check_q_guard(pt["q"], guard_order)
        models.append(build_model(r=pt["r"], s=pt["s"], q=pt["q"], guard_order=guard_order))
    rows = []
    for i in range(samples):
        p = random_ncpoly(rng, THREE_LETTERS, max_degree, 6)
        nf = sym.normal_form(p)
        for pt, spec in zip(pts, models):
            ok = specialize_poly(nf, pt) == spec.normal_form(specialize_poly(p, pt))
            label = ",".join(f"{k}={v}" for k, v in pt.items())
            rows.append(CheckResult("specialization commutes", {"sample": i, "point": label}, ok,
                                    "equal" if ok else "differ"))
    return rows


# identity families


def _two(m: AlgebraModel, lhs: NCPoly, rhs: NCPoly) -> NCPoly:
    return m.oracle.normal_form(lhs - rhs)


def _three(m: AlgebraModel, lhs: NCPoly, rhs: NCPoly) -> NCPoly:
    return m.system.normal_form(lhs - rhs)


def anb_general(m: AlgebraModel, n: int) -> tuple[NCPoly, NCPoly]:
    """A^n B in U_q(r,s), two letters."""
    q, r, s = m.q, m.r, m.s
    A, B = w2("A"), w2("B")
    first = NCPoly.zero(TWO_LETTERS)
    for t in range(n + 1):
        first = first + (comb(n, t) * s**t * q ** (n - t)) * w2("A" * (n - t))
    second = NCPoly.zero(TWO_LETTERS)
    for i in range(n):
        second = second + (q * A + s) ** (n - 1 - i) * w2("A" * (i + 1))
    return w2("A" * n + "B"), B * first + r * second


def abn_general(m: AlgebraModel, n: int) -> tuple[NCPoly, NCPoly]:
    """A B^n in U_q(r,s), two letters."""
    q, r, s = m.q, m.r, m.s
    B = w2("B")
    first = NCPoly.zero(TWO_LETTERS)
    for t in range(n + 1):
        first = first + (comb(n, t) * r**t * q ** (n - t)) * w2("B" * (n - t) + "A")
    second = NCPoly.zero(TWO_LETTERS)
    for i in range(n):
        second = second + (q * B + r) ** (n - 1 - i) * w2("B" * (i + 1))
    return w2("A" + "B" * n), first + s * second


def product_form(m: AlgebraModel, n: int) -> NCPoly:
    """prod_{i=0}^{n-1} (q^(n-i) BA + {n-i} r A), left to right."""
    out = NCPoly.one(TWO_LETTERS)
    for i in range(n):
        out = out * ((m.q ** (n - i)) * w2("BA") + (m.qb(n - i) * m.r) * w2("A"))
    return out


def product_form_ac(m: AlgebraModel, n: int) -> NCPoly:
    """prod (rA - q^j C)/(1-q) with j running n, n-1, ..., 1."""
    out = NCPoly.one(THREE_LETTERS)
    for j in range(n, 0, -1):
        out = out * ((m.r * w3("A") - (m.q**j) * w3("C")) / (1 - m.q))
    return out


def product_form_ac_extra_factor(m: AlgebraModel, n: int) -> NCPoly:
    """The n+1 factor variant prod_{i=0}^{n} (rA - q^(n+1-i) r C)/(1-q)."""
    out = NCPoly.one(THREE_LETTERS)
    for i in range(n + 1):
        out = out * ((m.r * w3("A") - (m.q ** (n + 1 - i) * m.r) * w3("C")) / (1 - m.q))
    return out


def append_trailing_c(p: NCPoly, t: int, w: int, q: RatFunc) -> NCPoly:
    """Right-multiply a combination of B^a C^k A^w by C^t using A^w C^t = q^(wt) C^t A^w."""
    out = {}
    for word, c in p.terms.items():
        stem = word.rstrip("A")
        if len(word) - len(stem) != w:
            raise ValueError("every term must end in A^w")
        out[stem + "C" * t + "A" * w] = c * q ** (w * t)
    return NCPoly(THREE_LETTERS, out)


def prepend_leading_c(p: NCPoly, t: int, w: int, q: RatFunc) -> NCPoly:
    """Left-multiply a combination of B^w C^k A^a by C^t using C^t B^w = q^(wt) B^w C^t."""
    out = {}
    for word, c in p.terms.items():
        rest = word.lstrip("B")
        if len(word) - len(rest) != w:
            raise ValueError("every term must start with B^w")
        out["B" * w + "C" * t + rest] = c * q ** (w * t)
    return NCPoly(THREE_LETTERS, out)


def reorder_ckawby(m: AlgebraModel, k: int, w: int, y: int, t: int) -> NCPoly:
    """Expansion of C^k A^w B^y C^t in U_q(r,0) over B^a C^(k+t) A^w."""
    q, r = m.q, m.r
    wr, kr = m.qb(w) * r, m.qb(k) * r
    base = NCPoly.zero(THREE_LETTERS)
    for i in range(y + 1):
        for j in range(y - i + 1):
            c = comb(y, i) * q ** (w * (y - i)) * wr**i * comb(y - i, j) * q ** (k * (y - i - j)) * kr**j
            base = base + c * w3("B" * (y - i - j) + "C" * k + "A" * w)
    return append_trailing_c(base, t, w, q)


def reorder_ctaybw(m: AlgebraModel, t: int, y: int, w: int, k: int) -> NCPoly:
    """Expansion of C^t A^y B^w C^k in U_q(0,s) over B^w C^(k+t) A^a."""
    q, s = m.q, m.s
    ws, ks = m.qb(w) * s, m.qb(k) * s
    base = NCPoly.zero(THREE_LETTERS)
    for i in range(y + 1):
        for j in range(y - i + 1):
            c = comb(y, i) * q ** (w * (y - i)) * ws**i * comb(y - i, j) * q ** (k * (y - i - j)) * ks**j
            base = base + c * w3("B" * w + "C" * k + "A" * (y - i - j))
    return prepend_leading_c(base, t, w, q)


def _sum_binom(n: int, term: Callable[[int], NCPoly]) -> NCPoly:
    out = NCPoly.zero(THREE_LETTERS)
    for i in range(n + 1):
        out = out + term(i)
    return out


def identity_suite(bounds: dict | None = None, r="sym", s="sym", q="sym") -> list[CheckResult]:
    b = bounds_with(bounds)
    full = build_model(r, s, q)
    r0 = build_model(r, 0, q)
    s0 = build_model(0, s, q)
    rows: list[CheckResult] = []

    for n in range(1, b["n"] + 1):
        rows.append(_residual_row("A^n*B in U_q(r,s)", {"n": n}, _two(full, *anb_general(full, n))))
        rows.append(_residual_row("A*B^n in U_q(r,s)", {"n": n}, _two(full, *abn_general(full, n))))

    for h in range(1, b["h"] + 1):
        rhs = w3("A" + "C" * h) - full.q**h * w3("C" * h + "A") - (full.qb(h) * full.s) * w3("C" * h)
        rows.append(_residual_row("xi2 summation (free algebra)", {"h": h}, xi2_sum(full, h) - rhs))

    for mm in range(1, b["m"] + 1):
        cm = "C" * mm
        rows.append(_residual_row("A*C^m in U_q(r,s)", {"m": mm}, _three(
            full, w3("A" + cm), full.q**mm * w3(cm + "A") + (full.qb(mm) * full.s) * w3(cm))))
        rows.append(_residual_row("C^m*B in U_q(r,s)", {"m": mm}, _three(
            full, w3(cm + "B"), full.q**mm * w3("B" + cm) + (full.qb(mm) * full.r) * w3(cm))))

    e = b["e"]
    m, qq, rr = r0, r0.q, r0.r
    for n in range(1, e + 1):
        An = "A" * n
        rows.append(_residual_row("A^n*B in U_q(r,0)", {"n": n}, _two(
            m, w2(An + "B"), qq**n * w2("B" + An) + (m.qb(n) * rr) * w2(An))))
        rows.append(_residual_row("A^n*B^n product form", {"n": n}, _two(m, w2(An + "B" * n), product_form(m, n))))
        res = _three(m, w3(An + "B" * n), product_form_ac(m, n))
        extra = _three(m, w3(An + "B" * n), product_form_ac_extra_factor(m, n))
        row = _residual_row("A^n*B^n product form in A, C", {"n": n}, res)
        row.detail += f"; n+1 factor variant residual {extra.render()}"
        rows.append(row)
        rows.append(_residual_row("A^n*C in U_q(r,0)", {"n": n}, _three(m, w3(An + "C"), qq**n * w3("C" + An))))
        rows.append(_residual_row("A*C^n in U_q(r,0)", {"n": n}, _three(
            m, w3("A" + "C" * n), qq**n * w3("C" * n + "A"))))
        rows.append(_residual_row("C^n*B in U_q(r,0)", {"n": n}, _three(
            m, w3("C" * n + "B"), qq**n * w3("B" + "C" * n) + (m.qb(n) * rr) * w3("C" * n))))
        rows.append(_residual_row("C*B^n in U_q(r,0)", {"n": n}, _three(
            m, w3("C" + "B" * n),
            _sum_binom(n, lambda i: (comb(n, i) * rr ** (n - i) * qq**i) * w3("B" * i + "C")))))
        for mm in range(1, e + 1):
            rows.append(_residual_row("A^n*C^m in U_q(r,0)", {"n": n, "m": mm}, _three(
                m, w3(An + "C" * mm), qq ** (n * mm) * w3("C" * mm + An))))
            rows.append(_residual_row("C^m*B^n in U_q(r,0)", {"n": n, "m": mm}, _three(
                m, w3("C" * mm + "B" * n),
                _sum_binom(n, lambda i: (comb(n, i) * qq ** (mm * n - mm * i) * (m.qb(mm) * rr) ** i)
                           * w3("B" * (n - i) + "C" * mm)))))
    for k in range(1, e + 1):
        for w in range(1, e + 1):
            for y in range(1, e + 1):
                for t in range(0, e + 1):
                    word = "C" * k + "A" * w + "B" * y + "C" * t
                    rows.append(_residual_row("C^k*A^w*B^y*C^t in U_q(r,0)", {"k": k, "w": w, "y": y, "t": t},
                                              _three(m, w3(word), reorder_ckawby(m, k, w, y, t))))

    m, qq, ss = s0, s0.q, s0.s
    for n in range(1, e + 1):
        Bn = "B" * n
        rows.append(_residual_row("A*B^n in U_q(0,s)", {"n": n}, _two(
            m, w2("A" + Bn), qq**n * w2(Bn + "A") + (m.qb(n) * ss) * w2(Bn))))
        for mm in range(1, e + 1):
            rows.append(_residual_row("A^n*C^m in U_q(0,s)", {"n": n, "m": mm}, _three(
                m, w3("A" * n + "C" * mm),
                _sum_binom(n, lambda i: (comb(n, i) * qq ** (mm * n - mm * i) * (m.qb(mm) * ss) ** i)
                           * w3("C" * mm + "A" * (n - i))))))
            rows.append(_residual_row("C^m*B^n in U_q(0,s)", {"n": n, "m": mm}, _three(
                m, w3("C" * mm + Bn), qq ** (mm * n) * w3(Bn + "C" * mm))))
    for t in range(0, e + 1):
        for y in range(1, e + 1):
            for w in range(1, e + 1):
                for k in range(1, e + 1):
                    word = "C" * t + "A" * y + "B" * w + "C" * k
                    rows.append(_residual_row("C^t*A^y*B^w*C^k in U_q(0,s)", {"t": t, "y": y, "w": w, "k": k},
                                              _three(m, w3(word), reorder_ctaybw(m, t, y, w, k))))
    return rows


def certificate_suite(k_max: int = 6, r="sym", s="sym", q="sym") -> list[CheckResult]:
    m = build_model(r, s, q)
    rows = [CheckResult(c.name, {}, c.holds, "holds" if c.holds else f"residual {c.residual.render()}")
            for c in presentation_certificates(m, k_max)]
    # the uncorrected combinations differ from their targets by exactly s*zeta2 and r*zeta2
    zeta2 = w3("C") - w3("AB") + w3("BA")
    for c, scale in zip(zeta2_free_combinations(m), (m.s, m.r)):
        expected = scale * zeta2
        rows.append(CheckResult("without zeta2 term: " + c.name, {}, c.residual == expected,
                                f"free-algebra residual {c.residual.render()}, zero only modulo zeta2"))
    return rows


# Lie layer


def lie_suite(bounds: dict | None = None, r="sym", q="sym") -> list[CheckResult]:
    b = bounds_with(bounds)
    m = build_model(r, 0, q)
    qq, rr = m.q, m.r
    A, B, C = w3("A"), w3("B"), w3("C")
    rows: list[CheckResult] = []
    top = max(b["m"], b["n"])
    for mm in range(1, top + 1):
        cm = "C" * mm
        rows.append(_residual_row("(ad C)^m A", {"m": mm}, ad_power(C, A, mm, m) - m.normal_form(
            (1 - qq) ** mm * w3(cm + "A"))))
        rows.append(_residual_row("(ad C)^m B", {"m": mm}, ad_power(C, B, mm, m) - m.normal_form(
            (qq - 1) ** mm * w3("B" + cm) + (qq - 1) ** (mm - 1) * rr * w3(cm))))
        rows.append(_residual_row("q^m [C^m A, B]", {"m": mm}, m.normal_form(
            qq**mm * (w3(cm + "AB") - w3("B" + cm + "A")) - m.qb(mm + 1) * w3(cm + "C"))))
        rows.append(_residual_row("[C^m, A]", {"m": mm}, lie_bracket(w3(cm), A, m) - (1 - qq**mm) * w3(cm + "A")))
        rows.append(_residual_row("[B, C^m]", {"m": mm}, lie_bracket(B, w3(cm), m) - m.normal_form(
            (1 - qq**mm) * w3("B" + cm) - (m.qb(mm) * rr) * w3(cm))))
    for mm in range(1, b["m"] + 1):
        cm = "C" * mm
        for n in range(1, b["n"] + 1):
            rows.append(_residual_row("(-ad A)^n (C^m A)", {"m": mm, "n": n}, ad_power(
                -A, w3(cm + "A"), n, m) - m.normal_form((1 - qq**mm) ** n * w3(cm + "A" * (n + 1)))))
            factor = (1 - qq**mm) * B - m.qb(mm) * rr
            rows.append(_residual_row("(ad B)^n (B C^m)", {"m": mm, "n": n}, ad_power(
                B, w3("B" + cm), n, m) - m.normal_form(factor**n * w3("B" + cm))))

    words = lie_basis_words(b["lie"])
    for x in words:
        for y in words:
            e = commutator_table_entry(x, y, m)
            if e.matches is None:
                how = "no closed form"
            elif e.matches:
                how = "closed form matches"
            else:
                how = f"closed form differs: got {e.normal_form.render()}"
            detail = how + ("; in Lie span" if e.in_lie_span else "; leaves Lie span")
            rows.append(CheckResult(f"[{x}, {y}]", {}, e.ok, detail))

    e3 = b["lie"]
    for y in range(1, e3 + 1):
        for k in range(1, e3 + 1):
            for w in range(1, e3 + 1):
                word = "B" * y + "C" * k + "A" * w
                ok = span_words(w3(word), m)
                rows.append(CheckResult("B^y*C^k*A^w in span of B^l C^m, C^m A^l", {"y": y, "k": k, "w": w}, ok,
                                        "in span" if ok else "outside span"))

    expected = {"C": True, "AB": True, "BA": True, "": False, "AA": False, "BBB": False}
    for word, want in expected.items():
        v = membership(w3(word), m, "r0", render_word(word))
        rows.append(CheckResult(f"is-lie {render_word(word)}", {}, v.verdict == want,
                                f"verdict {str(v.verdict).lower()}"))
    return rows


def psi_suite(bounds: dict | None = None, s="sym", q="sym") -> list[CheckResult]:
    b = bounds_with(bounds)
    src, tgt = psi_models(s, q)
    psi = LieMap(src, tgt)
    rows = [CheckResult("Psi permutes basis labels", {"bound": b["psi"]}, psi_index_bijection(b["psi"]))]
    words = lie_basis_words(b["lie"])
    for x in words:
        for y in words:
            res = check_bracket_preservation(x.poly(), y.poly(), src, tgt)
            rows.append(_residual_row(f"Psi[{x}, {y}] = [Psi {x}, Psi {y}]", {}, res))
    e = b["lie"]
    for y in range(1, e + 1):
        for k in range(1, e + 1):
            for w in range(1, e + 1):
                lhs = psi(w3("B" * y + "C" * k + "A" * w))
                rhs = tgt.normal_form(-w3("B" * w + "C" * k + "A" * y))
                rows.append(_residual_row("Psi(B^y*C^k*A^w) = -B^w*C^k*A^y", {"y": y, "k": k, "w": w}, lhs - rhs))
                for t in range(0, e + 1):
                    lhs = psi(w3("C" * k + "A" * y + "B" * w + "C" * t))
                    rhs = tgt.normal_form(-w3("C" * t + "A" * w + "B" * y + "C" * k))
                    rows.append(_residual_row("Psi(C^k*A^y*B^w*C^t) = -C^t*A^w*B^y*C^k",
                                              {"k": k, "y": y, "w": w, "t": t}, lhs - rhs))
    for basis, ok_src, ok_tgt in reconstruct_in_target(e, src, tgt):
        rows.append(CheckResult(f"bracket recipe for {basis}", {}, ok_src and ok_tgt,
                                "reproduces the word and its Psi image" if ok_src and ok_tgt else
                                f"source ok={ok_src}, target ok={ok_tgt}"))
    return rows


# obstructions


def obstruction_suite() -> list[CheckResult]:
    rows = []
    noiso = obstruction_preset("noiso")
    ok = all(c.agrees for c in noiso.claims) and len(noiso.constraints) == 2
    rows.append(CheckResult("noiso relation residual", {}, ok,
                            f"two-letter residual {noiso.relation_residual_oracle.render()}; "
                            f"times -1/(alpha*beta): "
                            + ", ".join(f"{render_word(c.word)}: {c.computed.render()}" for c in noiso.claims)))
    for name in ("rcor", "scor"):
        rep = obstruction_preset(name)
        rows.append(CheckResult(f"{name} relation residual", {}, rep.relation_preserved,
                                f"residual {rep.relation_residual.render()}"))
        for p in rep.probes:
            detail = f"residual {p.residual.render()}; " + ", ".join(
                f"{render_word(c.word)}: {c.via_source.render()} vs {c.via_target.render()}" for c in p.coefficients)
            rows.append(CheckResult(f"{name} probe ({render_word(p.x)}, {render_word(p.y)})", {},
                                    p.oracle_agrees, detail + ("; oracle agrees" if p.oracle_agrees else
                                                               "; oracle disagrees")))
        for c in rep.claims:
            status = "agrees" if c.agrees else "differs"
            rows.append(CheckResult(f"{name} claimed value: {c.label}", {"word": render_word(c.word)},
                                    rep.probes[0].oracle_agrees,
                                    f"claimed {c.claimed.render()}, computed {c.computed.render()} ({status})"))
    return rows


TARGETS = ("ambiguities", "basis", "oracle", "identities", "certificates", "lie", "psi", "obstruction",
           "specialization")
