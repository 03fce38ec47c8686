"""Acceptance criteria 1-9, each run at exact tolerance under its time limit.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion as it finishes; the same lines are repeated in the terminal summary.
"""

import json
import random
import time

import jsonschema
import pytest

from qlie import suites
from qlie.algebras import build_model
from qlie.cli import REPORT_SCHEMA, main, run_command
from qlie.coeffs import ALPHA, BETA, Q, R, S
from qlie.liepoly import obstruction_preset
from qlie.parse import parse_poly
from qlie.rewrite import check_resolvable, enumerate_ambiguities
from qlie.sampling import random_expression

pytestmark = pytest.mark.acceptance

RESULTS: list[str] = []


def judge(number: int, limit: float, body):
    """Run ``body`` (returns (ok, detail)), enforce the time limit, record a line."""
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    in_time = elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    line = f"{status} criterion {number}: {detail} ({elapsed:.1f}s, limit {limit:.0f}s)"
    RESULTS.append(line)
    print("\n" + line)
    assert ok, detail
    assert in_time, f"took {elapsed:.1f}s, limit {limit}s"


def all_pass(rows):
    bad = [r.line() for r in rows if not r.passed]
    return not bad, f"{len(rows) - len(bad)}/{len(rows)} checks pass" + (f"; first failure {bad[0]}" if bad else "")


def test_criterion_1_ambiguities():
    def body():
        m = build_model()
        found = enumerate_ambiguities(m.system, 8)
        inclusions = [a for a in found if a.kind == "inclusion"]
        unresolved = [a.label() for a in found if not check_resolvable(a, m.system).resolved]
        ok = len(found) == 37 and not inclusions and not unresolved
        return ok, f"{len(found)} ambiguities, {len(inclusions)} inclusions, {len(unresolved)} unresolved"

    judge(1, 60, body)


def test_criterion_2_basis():
    judge(2, 60, lambda: all_pass(suites.basis_suite(build_model(), samples=200, seed=0)))


def test_criterion_3_oracle():
    judge(3, 120, lambda: all_pass(suites.oracle_suite(build_model(), samples=200, seed=1)))


def test_criterion_4_identities():
    def body():
        rows = suites.identity_suite() + suites.certificate_suite(6)
        return all_pass(rows)

    judge(4, 180, body)


def test_criterion_5_lie_layer():
    def body():
        rows = suites.lie_suite()
        verdicts = {r.name: r.detail for r in rows if r.name.startswith("is-lie")}
        want = {"is-lie C": "verdict true", "is-lie A*B": "verdict true", "is-lie B*A": "verdict true",
                "is-lie I": "verdict false", "is-lie A^2": "verdict false", "is-lie B^3": "verdict false"}
        ok, detail = all_pass(rows)
        return ok and verdicts == want, detail

    judge(5, 120, body)


def test_criterion_6_psi():
    judge(6, 120, lambda: all_pass(suites.psi_suite()))


def test_criterion_7_obstructions():
    def body():
        noiso = obstruction_preset("noiso")
        # constraint set, up to the overall sign of the residual
        expected = {ALPHA * BETA * (Q**2 - 1), S * BETA * (ALPHA * Q + 1)}
        ok_noiso = {-c for c in noiso.constraints} == expected and all(c.agrees for c in noiso.claims)

        rcor = obstruction_preset("rcor")
        probe = rcor.probes[0]
        c3a = next(c for c in probe.coefficients if c.word == "CCCA")
        claim = next(c for c in rcor.claims if c.claimed == R**3 * (R - 1))
        # the claimed value is reported as a finding; the computed value must match the oracle path
        ok_rcor = (rcor.relation_residual.is_zero() and probe.oracle_agrees
                   and c3a.via_source == c3a.via_target == -(R**3) * Q**3 / (1 - Q)
                   and claim.computed == 0 and not claim.agrees)
        detail = (f"noiso constraints {[c.render() for c in noiso.constraints]}; "
                  f"rcor relation residual {rcor.relation_residual.render()}; "
                  f"C^3*A difference claimed {claim.claimed.render()}, computed {claim.computed.render()}")
        return ok_noiso and ok_rcor, detail

    judge(7, 30, body)


def test_criterion_8_specialization():
    judge(8, 60, lambda: all_pass(suites.specialization_suite(samples=50, points=5, guard_order=12)))


def test_criterion_9_cli(capsys):
    def body():
        rng = random.Random(9)
        trips = 0
        for _ in range(100):
            p = parse_poly(random_expression(rng))
            trips += parse_poly(p.render()) == p
        capsys.readouterr()
        main(["normalize", "--json", "B*C*A"])
        doc = json.loads(capsys.readouterr().out)
        jsonschema.validate(doc, REPORT_SCHEMA)
        failing, code = run_command(["verify", "identity", "A*B", "B*A"])
        jsonschema.validate(failing, REPORT_SCHEMA)
        ok = trips == 100 and code == 1 and failing["status"] == "fail"
        return ok, f"{trips}/100 round trips, schema valid, forced failure exit {code}"

    judge(9, 10, body)
