"""Command line front end: ``qlie <command> [options]``.

Exit codes: 0 when everything ran and passed, 1 when a verification item
failed, 2 on usage, parse or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import suites
from .algebras import MODEL_KINDS, AlgebraModel, model_by_kind, specialize_poly, verify_identity
from .coeffs import RootOfUnityError, check_q_guard
from .freealg import TWO_LETTERS
from .liepoly import (
    OBSTRUCTION_PRESETS,
    NotLiePolynomial,
    lie_bracket,
    membership,
    obstruction_preset,
    psi_apply,
    psi_models,
)
from .parse import ParseError, parse_poly, parse_scalar, parse_word
from .suites import CheckResult

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "model", "items", "status", "elapsed_ms"],
    "properties": {
        "command": {"type": "string"},
        "model": {"type": "object"},
        "items": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "params", "status", "detail"],
                "properties": {
                    "name": {"type": "string"},
                    "params": {"type": "object"},
                    "status": {"enum": ["pass", "fail"]},
                    "detail": {"type": "string"},
                    "data": {},
                },
            },
        },
        "status": {"type": "string"},
        "elapsed_ms": {"type": "number"},
    },
}

VERIFY_TARGETS = suites.TARGETS + ("identity", "all")

# option name -> default, shared by flags and the key=value config file
DEFAULTS = {
    "model": "uqrs",
    "r": "sym",
    "s": "sym",
    "kmax": 8,
    "bounds": "",
    "eval": "",
    "format": "text",
    "trace": False,
    "samples": 200,
    "seed": 0,
    "guard": 12,
}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=MODEL_KINDS, default=None)
    common.add_argument("--r", default=None, help='rational value or "sym"')
    common.add_argument("--s", default=None, help='rational value or "sym"')
    common.add_argument("--kmax", type=int, default=None)
    common.add_argument("--bounds", default=None, help="e.g. n=4,m=3,e=3")
    common.add_argument("--eval", default=None, help="e.g. q=1/2,r=3,s=-1")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", default=None)
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    common.add_argument("--trace", action="store_true", default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--guard", type=int, default=None, help="root-of-unity guard order")
    common.add_argument("--config", default=None, help="key=value file; flags take precedence")

    parser = argparse.ArgumentParser(prog="qlie", description="Exact computation in U_q(r,s).")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("normalize", parents=[common], help="normal form of an expression")
    p.add_argument("expr")
    p.add_argument("--oracle", action="store_true", help="use the two-letter oracle (no C)")
    p = sub.add_parser("bracket", parents=[common], help="normal form of [x, y]")
    p.add_argument("x")
    p.add_argument("y")
    p = sub.add_parser("is-lie", parents=[common], help="Lie polynomial membership")
    p.add_argument("expr")
    p = sub.add_parser("psi", parents=[common], help="apply Psi: L(s,0) -> L(0,s)")
    p.add_argument("expr")
    p = sub.add_parser("obstruction", parents=[common], help="candidate homomorphism report")
    p.add_argument("preset", choices=OBSTRUCTION_PRESETS)
    p.add_argument("--probe", action="append", default=None, help="word pair X,Y (repeatable)")
    p = sub.add_parser("verify", parents=[common], help="run a verification batch")
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("operands", nargs="*", help="LHS RHS for the identity target")
    return parser


def read_config(path: str) -> dict:
    out = {}
    for n, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def resolve_options(args: argparse.Namespace) -> dict:
    opts = dict(DEFAULTS)
    if args.config:
        opts.update(read_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    for key in ("kmax", "samples", "seed", "guard"):
        opts[key] = int(opts[key])
    if isinstance(opts["trace"], str):
        opts["trace"] = opts["trace"].lower() in ("1", "true", "yes", "on")
    if opts["model"] not in MODEL_KINDS:
        raise UsageError(f"unknown model {opts['model']!r}")
    if opts["format"] not in ("text", "json"):
        raise UsageError("format must be text or json")
    opts["bounds"] = parse_assignments(opts["bounds"], int)
    opts["eval"] = parse_assignments(opts["eval"], Fraction)
    unknown = set(opts["eval"]) - {"q", "r", "s"}
    if unknown:
        raise UsageError(f"--eval accepts q, r, s only, not {sorted(unknown)}")
    return opts


def parse_assignments(text: str, kind):
    out = {}
    for part in filter(None, (p.strip() for p in str(text).split(","))):
        if "=" not in part:
            raise UsageError(f"expected name=value, got {part!r}")
        key, value = (x.strip() for x in part.split("=", 1))
        try:
            out[key] = kind(value)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad value for {key}: {value!r}") from None
    return out


def _param_spec(value):
    if value == "sym":
        return "sym"
    return parse_scalar(value)


def make_model(opts: dict, kind: str | None = None) -> AlgebraModel:
    point = opts["eval"]
    r = point.get("r", _param_spec(opts["r"]))
    s = point.get("s", _param_spec(opts["s"]))
    q = point.get("q", "sym")
    return model_by_kind(kind or opts["model"], r=r, s=s, q=q, guard_order=opts["guard"])


def _input(text: str, opts: dict, alphabet=None):
    p = parse_poly(text, alphabet) if alphabet else parse_poly(text)
    if opts["eval"]:
        p = specialize_poly(p, opts["eval"])
    return p


def cmd_normalize(args, opts) -> list[CheckResult]:
    m = make_model(opts)
    if args.oracle:
        p = _input(args.expr, opts, TWO_LETTERS)
        nf = m.oracle.normal_form(p)
        return [CheckResult("normal form (oracle)", {"input": args.expr}, True, nf.render())]
    p = _input(args.expr, opts)
    trace = [] if opts["trace"] else None
    nf = m.normal_form(p, trace=trace)
    rows = [CheckResult("normal form", {"input": args.expr}, True, nf.render())]
    for n, step in enumerate(trace or [], 1):
        rows.append(CheckResult("step", {"n": n}, True, step))
    return rows


def cmd_bracket(args, opts) -> list[CheckResult]:
    m = make_model(opts)
    nf = lie_bracket(_input(args.x, opts), _input(args.y, opts), m)
    return [CheckResult("bracket", {"x": args.x, "y": args.y}, True, nf.render())]


def cmd_is_lie(args, opts) -> list[CheckResult]:
    if opts["model"] == "uqrs":
        raise UsageError("is-lie needs --model uq_r0 or uq_0s")
    m = make_model(opts)
    v = membership(_input(args.expr, opts), m, "r0" if opts["model"] == "uq_r0" else "0s", args.expr)
    row = CheckResult("is-lie", {"input": args.expr}, True, f"verdict {str(v.verdict).lower()}")
    row.data = v.to_json()
    return [row]


def cmd_psi(args, opts) -> list[CheckResult]:
    s = opts["eval"].get("s", _param_spec(opts["s"]))
    q = opts["eval"].get("q", "sym")
    src, tgt = psi_models(s, q)
    try:
        img = psi_apply(_input(args.expr, opts), src, tgt)
    except NotLiePolynomial as exc:
        return [CheckResult("psi", {"input": args.expr}, False, str(exc))]
    return [CheckResult("psi", {"input": args.expr}, True, img.render())]


def cmd_obstruction(args, opts) -> list[CheckResult]:
    probes = None
    if args.probe:
        probes = []
        for spec in args.probe:
            parts = spec.split(",")
            if len(parts) != 2:
                raise UsageError(f"--probe expects X,Y, got {spec!r}")
            probes.append(tuple(parse_word(x) for x in parts))
    rep = obstruction_preset(args.preset, probes)
    ok = all(p.oracle_agrees for p in rep.probes)
    if args.preset == "noiso":
        ok = ok and all(c.agrees for c in rep.claims)
    row = CheckResult(f"obstruction {args.preset}", {}, ok,
                      f"relation residual {rep.relation_residual.render()}")
    row.data = rep.to_json()
    return [row]


def cmd_verify(args, opts) -> list[CheckResult]:
    target = args.target
    if target == "identity":
        if len(args.operands) != 2:
            raise UsageError("verify identity needs LHS and RHS")
        m = make_model(opts)
        lhs, rhs = (_input(x, opts) for x in args.operands)
        ok = verify_identity(lhs, rhs, m)
        res = m.normal_form(lhs - rhs)
        return [CheckResult("identity", {"lhs": args.operands[0], "rhs": args.operands[1]}, ok,
                            "residual 0" if ok else f"residual {res.render()}")]
    if args.operands:
        raise UsageError(f"verify {target} takes no operands")
    b = opts["bounds"]
    r, s = _param_spec(opts["r"]), _param_spec(opts["s"])
    targets = suites.TARGETS if target == "all" else (target,)
    rows: list[CheckResult] = []
    for t in targets:
        if t == "ambiguities":
            rows += suites.ambiguity_suite(make_model(opts, "uqrs"), opts["kmax"])
        elif t == "basis":
            rows += suites.basis_suite(make_model(opts, "uqrs"), opts["samples"], opts["seed"])
        elif t == "oracle":
            rows += suites.oracle_suite(make_model(opts, "uqrs"), opts["samples"], opts["seed"])
        elif t == "identities":
            rows += suites.identity_suite(b, r=r, s=s)
        elif t == "certificates":
            rows += suites.certificate_suite(min(opts["kmax"], b.get("k", opts["kmax"])), r=r, s=s)
        elif t == "lie":
            rows += suites.lie_suite(b, r=r)
        elif t == "psi":
            rows += suites.psi_suite(b, s=s)
        elif t == "obstruction":
            rows += suites.obstruction_suite()
        elif t == "specialization":
            rows += suites.specialization_suite(samples=min(opts["samples"], 50), seed=opts["seed"],
                                                guard_order=opts["guard"])
    return rows


COMMANDS = {
    "normalize": cmd_normalize,
    "bracket": cmd_bracket,
    "is-lie": cmd_is_lie,
    "psi": cmd_psi,
    "obstruction": cmd_obstruction,
    "verify": cmd_verify,
}


def _model_echo(opts: dict) -> dict:
    return {"kind": opts["model"], "r": str(opts["r"]), "s": str(opts["s"]), "q": "sym",
            **{k: str(v) for k, v in opts["eval"].items()}}


def run_command(argv: list[str]) -> tuple[dict, int]:
    """Run one command; returns the report document and the exit code."""
    start = time.perf_counter()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed help or a usage message
        code = 0 if exc.code == 0 else 2
        return {"command": " ".join(["qlie", *argv]), "model": {}, "items": [],
                "status": "help" if code == 0 else "error", "elapsed_ms": 0.0}, code
    doc = {"command": " ".join(["qlie", *argv]), "model": {}, "items": [], "status": "ok", "elapsed_ms": 0.0}
    try:
        opts = resolve_options(args)
        doc["model"] = _model_echo(opts)
        if "q" in opts["eval"]:
            check_q_guard(opts["eval"]["q"], opts["guard"])
        rows = COMMANDS[args.command](args, opts)
    except (UsageError, ParseError, RootOfUnityError, ValueError, ZeroDivisionError, OSError) as exc:
        doc["status"] = "error"
        doc["error"] = f"{type(exc).__name__}: {exc}"
        doc["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
        return doc, 2
    doc["items"] = [row.to_json() for row in rows]
    failed = sum(not row.passed for row in rows)
    doc["status"] = "fail" if failed else "pass"
    doc["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    doc["format"] = opts["format"]
    return doc, 1 if failed else 0


def render_text(doc: dict) -> str:
    if doc.get("error"):
        return f"error: {doc['error']}"
    lines = []
    for item in doc["items"]:
        params = ",".join(f"{k}={v}" for k, v in item["params"].items())
        head = f"{item['status'].upper():4} {item['name']}" + (f" [{params}]" if params else "")
        lines.append(f"{head}: {item['detail']}" if item["detail"] else head)
        if "data" in item:
            lines.append(json.dumps(item["data"], indent=2))
    total = len(doc["items"])
    failed = sum(i["status"] == "fail" for i in doc["items"])
    lines.append(f"{doc['status']}: {total - failed}/{total} passed in {doc['elapsed_ms']:.0f} ms")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    doc, code = run_command(argv)
    if doc["status"] == "help" or (code == 2 and "error" not in doc):
        return code
    fmt = doc.pop("format", "json" if "--json" in argv else "text")
    if fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        out = render_text(doc)
        print(out, file=sys.stderr if code == 2 else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
