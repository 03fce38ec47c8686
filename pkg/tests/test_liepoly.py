import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P
from qlie.algebras import build_model
from qlie.coeffs import ALPHA, BETA, Q, R, S
from qlie.freealg import TWO_LETTERS
from qlie.liepoly import (
    LieBasisWord,
    LieMap,
    NotLiePolynomial,
    ReducibleWord,
    ad_power,
    check_bracket_preservation,
    closed_form,
    commutator_table_entry,
    homomorphism_obstruction,
    is_lie_polynomial,
    lie_basis_classify,
    lie_bracket,
    lie_basis_words,
    membership,
    obstruction_preset,
    psi_apply,
    psi_index_bijection,
    psi_models,
    reconstruct_in_target,
)

SRC, TGT = psi_models()


def test_ad_examples(uq_r0):
    assert ad_power(P("C"), P("A"), 2, uq_r0) == (1 - Q) ** 2 * P("C^2*A")
    assert ad_power(P("C"), P("B"), 2, uq_r0) == (Q - 1) ** 2 * P("B*C^2") + (Q - 1) * R * P("C^2")
    assert ad_power(P("C"), P("B"), 0, uq_r0) == P("B")


def test_classify():
    assert lie_basis_classify("CCAAAAA") == LieBasisWord("CA", 2, 5)
    assert lie_basis_classify("AA") is None
    assert lie_basis_classify("") is None
    assert lie_basis_classify("C") == LieBasisWord("BC", 0, 1)
    with pytest.raises(ReducibleWord):
        lie_basis_classify("AC")
    with pytest.raises(ValueError):
        LieBasisWord("CA", 0, 2)


@pytest.mark.parametrize("text, verdict", [("C", True), ("A*B", True), ("B*A", True), ("I", False),
                                           ("A^2", False), ("B^3", False), ("[A,B]", True)])
def test_is_lie_verdicts(uq_r0, text, verdict):
    assert is_lie_polynomial(P(text), uq_r0) is verdict


def test_membership_json(uq_r0):
    v = membership(P("A*B"), uq_r0, label="A*B")
    assert v.to_json() == {"input": "A*B", "normal_form": v.normal_form.render(), "verdict": True,
                           "offending_words": []}
    assert v.normal_form == P("(r*A - q*C)/(1-q)")
    assert membership(P("A^2 + C"), uq_r0).offending_words == ["AA"]


def test_membership_needs_degenerate_model(uqrs):
    with pytest.raises(ValueError):
        is_lie_polynomial(P("C"), uqrs)


def test_table_examples(uq_r0):
    c2, a = LieBasisWord("BC", 0, 2), LieBasisWord("A")
    assert commutator_table_entry(c2, a, uq_r0).normal_form == (1 - Q**2) * P("C^2*A")
    ca = LieBasisWord("CA", 1, 1)
    entry = commutator_table_entry(ca, ca, uq_r0)
    assert entry.normal_form.is_zero() and entry.ok
    bc, b = LieBasisWord("BC", 1, 1), LieBasisWord("B")
    assert commutator_table_entry(bc, b, uq_r0).normal_form == (Q - 1) * P("B^2*C") + R * P("B*C")


def test_table_antisymmetric_closed_forms(uq_r0):
    x, y = LieBasisWord("CA", 2, 1), LieBasisWord("A")
    assert closed_form(y, x, uq_r0) == -closed_form(x, y, uq_r0)


def test_table_entries_small(uq_r0):
    words = lie_basis_words(2)
    for x in words:
        for y in words:
            assert commutator_table_entry(x, y, uq_r0).ok, (x, y)


def test_psi_examples():
    assert psi_apply(P("A"), SRC, TGT) == -P("B")
    assert psi_apply(P("2*A + 3*C^2"), SRC, TGT) == P("-2*B - 3*C^2")
    assert psi_apply(P("B*C*A"), SRC, TGT) == TGT.normal_form(-P("B*C*A"))


def test_psi_rejects_non_lie():
    with pytest.raises(NotLiePolynomial):
        psi_apply(P("A^2"), SRC, TGT)


def test_psi_constructor_coupling():
    with pytest.raises(ValueError):
        LieMap(build_model(s=0), build_model(r=0))
    with pytest.raises(ValueError):
        LieMap(build_model(), build_model(r=0))


def test_bracket_preservation_examples():
    assert check_bracket_preservation(P("A"), P("B"), SRC, TGT).is_zero()
    assert check_bracket_preservation(P("C^2"), P("A"), SRC, TGT).is_zero()
    assert check_bracket_preservation(P("C"), P("C"), SRC, TGT).is_zero()


def test_psi_bijection():
    assert psi_index_bijection(6)


def test_reconstruction():
    assert all(a and b for _, a, b in reconstruct_in_target(2, SRC, TGT))


def test_rcor_report():
    rep = obstruction_preset("rcor")
    assert rep.relation_residual.is_zero() and rep.relation_residual_oracle.is_zero()
    (probe,) = rep.probes
    assert probe.oracle_agrees
    coeffs = {c.word: (c.via_source, c.via_target) for c in probe.coefficients}
    # frozen from the independent oracle path
    assert coeffs["CCCA"] == (-(R**3) * Q**3 / (1 - Q),) * 2
    assert coeffs["CCAA"] == (R**3 * Q**2 / (1 - Q),) * 2
    assert probe.residual.is_zero()
    by_label = {c.label: c for c in rep.claims}
    assert not any(c.agrees for c in rep.claims)
    assert by_label["same difference divided by -q^3/(1-q)"].claimed == R**3 * (R - 1)
    assert by_label["source normal form of C*A^2*B*C, coefficient"].computed == -(Q**3) / (1 - Q)


def test_scor_report():
    rep = obstruction_preset("scor")
    assert rep.relation_preserved
    assert rep.probes[0].residual.is_zero() and rep.probes[0].oracle_agrees


def test_noiso_report():
    rep = obstruction_preset("noiso")
    res = rep.relation_residual_oracle
    ba, b = P("B*A", TWO_LETTERS), P("B", TWO_LETTERS)
    expected = ALPHA * BETA * (1 - Q**2) * ba - S * BETA * (ALPHA * Q + 1) * b
    assert res == expected
    assert all(c.agrees for c in rep.claims)
    assert rep.constraints_three_letter == [S * BETA * (ALPHA - 1), -ALPHA * BETA * (1 + Q)]
    assert set(rep.to_json()) >= {"relation_residual", "constraints", "probe_residuals"}


def test_custom_probe_and_bad_preset():
    rep = obstruction_preset("rcor", [("CA", "BC")])
    assert rep.claims == []
    with pytest.raises(ValueError):
        obstruction_preset("nope")


def test_identity_map_is_homomorphism(uqrs):
    rep = homomorphism_obstruction(uqrs, {"A": P("A"), "B": P("B")}, uqrs, [("A", "B")])
    assert rep.relation_preserved and rep.probes[0].residual.is_zero()


lie_words = st.sampled_from(lie_basis_words(2))


@settings(max_examples=40)
@given(lie_words, lie_words)
def test_psi_preserves_brackets(x, y):
    assert check_bracket_preservation(x.poly(), y.poly(), SRC, TGT).is_zero()


@settings(max_examples=30)
@given(lie_words, lie_words, lie_words)
def test_lie_closure_jacobi(x, y, z):
    m = build_model(s=0)

    def br(u, v):
        return lie_bracket(u, v, m)

    a, b, c = x.poly(), y.poly(), z.poly()
    assert (br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))).is_zero()
    assert is_lie_polynomial(br(a, b), m)
