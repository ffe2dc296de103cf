"""Command-line front end.

Exit codes: 0 pass, 1 mismatch, 2 usage error, 3 infeasible enumeration.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from typing import Sequence

from . import bundlecalc as bc
from . import report
from . import riemannroch as rr
from . import splitcurve as sc
from .chowring import RingPresentation, make_projective_space
from .errors import ChernposError, EnumerationTooLarge

EXIT_PASS, EXIT_MISMATCH, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- bundle expressions ----------------------------------------------------------------------
#
#   expr   := term ("+" term)*            direct sum
#   term   := factor ("*" factor)*        tensor product
#   factor := O(d) | T | Omega | trivial(r) | (expr)
#           | sym(expr, m) | wedge(expr, k) | twist(expr, d) | dual(expr) | det(expr) | end(expr)

_TOKEN = re.compile(r"\s*(-?\d+|[A-Za-z_]+|[()+*,])")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise UsageError(f"cannot parse bundle expression at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, ring: RingPresentation):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, want: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise UsageError(f"expected {want or 'token'}, got {tok!r}")
        self.pos += 1
        return tok

    def integer(self) -> int:
        tok = self.take()
        try:
            return int(tok)
        except ValueError:
            raise UsageError(f"expected an integer, got {tok!r}") from None

    def parse(self) -> bc.FormalBundle:
        E = self.expr()
        if self.peek() is not None:
            raise UsageError(f"trailing input at {self.peek()!r}")
        return E

    def expr(self):
        E = self.term()
        while self.peek() == "+":
            self.take()
            E = bc.dsum(E, self.term())
        return E

    def term(self):
        E = self.factor()
        while self.peek() == "*":
            self.take()
            E = bc.tensor(E, self.factor())
        return E

    def factor(self):
        tok = self.take()
        ring = self.ring
        if tok == "(":
            E = self.expr()
            self.take(")")
            return E
        if tok == "T":
            return bc.tangent_pn(ring)
        if tok == "Omega":
            return bc.dual(bc.tangent_pn(ring))
        if tok in ("O", "trivial"):
            self.take("(")
            k = self.integer()
            self.take(")")
            return bc.O(ring, k) if tok == "O" else bc.trivial(ring, k)
        if tok in ("sym", "wedge", "twist"):
            self.take("(")
            E = self.expr()
            self.take(",")
            k = self.integer()
            self.take(")")
            if tok == "sym":
                return bc.sym(E, k)
            if tok == "wedge":
                return bc.wedge(E, k)
            return bc.twist(E, ring.gen(0) * k)
        if tok in ("dual", "det", "end"):
            self.take("(")
            E = self.expr()
            self.take(")")
            return {"dual": bc.dual, "det": bc.det, "end": bc.end}[tok](E)
        raise UsageError(f"unknown bundle token {tok!r}")


def parse_bundle(text: str, n: int) -> bc.FormalBundle:
    """Parse a bundle expression on P^n."""
    return _Parser(text, make_projective_space(n)).parse()


# -- output ---------------------------------------------------------------------------------------


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload))
        return
    for key, value in payload.items():
        print(f"{key}: {value}")


def _emit_record(rec: report.ReportRecord, as_json: bool) -> None:
    if as_json:
        print(json.dumps(rec.to_json()))
        return
    print(f"[{'PASS' if rec.passed else 'FAIL'}] {rec.example}")
    for name, f in rec.fields.items():
        mark = "ok " if f.passed else "BAD"
        exp = "" if f.expected is None else f" (expected {report.encode(f.expected)}, {f.provenance})"
        print(f"  {mark} {name} = {report.encode(f.got)}{exp}")
    for note in rec.notes:
        print(f"  note: {note}")


def _poly_json(poly: rr.HilbertPolynomial) -> list[str]:
    return [str(c) for c in poly.coefficients]


# -- commands -------------------------------------------------------------------------------------


def cmd_example(args) -> int:
    rec = report.EXAMPLES[args.name]()
    _emit_record(rec, args.json)
    return EXIT_PASS if rec.passed else EXIT_MISMATCH


def cmd_plethysm(args) -> int:
    rec, summary = report.plethysm_record(args.r, args.a, args.check, args.trials, args.seed, args.cap)
    if args.json:
        payload = dict(summary)
        if rec.notes:
            payload["notes"] = rec.notes
        print(json.dumps(payload))
    else:
        _emit_record(rec, False)
    return EXIT_PASS if rec.passed else EXIT_MISMATCH


def cmd_restrict(args) -> int:
    S = sc.restriction_of(args.name, args.n)
    payload = {
        "bundle": args.name,
        "n": args.n,
        "splitting_type": [str(d) for d in S.degrees],
        "slope": str(S.slope()),
        "semistable": S.is_semistable(),
        "nef": S.is_nef(),
        "ample": S.is_ample(),
        "numerically_flat": S.is_numerically_flat(),
        "h0": str(S.h0()),
    }
    _emit(payload, args.json)
    return EXIT_PASS


def cmd_chi(args) -> int:
    E = parse_bundle(args.bundle, args.n)
    payload = {"bundle": args.bundle, "n": args.n, "rank": str(E.rank), "chern": str(E.chern), "chi": str(rr.euler_char(E))}
    _emit(payload, args.json)
    return EXIT_PASS


def cmd_hilbert(args) -> int:
    E = parse_bundle(args.bundle, args.n)
    h = E.ring.gen(0)
    poly = rr.hilbert_polynomial(E, h)
    payload = {
        "bundle": args.bundle,
        "n": args.n,
        "polynomial_coefficients": _poly_json(poly),
        "normalized_equals_trivial": rr.normalized_hilbert_equal(E, h),
    }
    _emit(payload, args.json)
    return EXIT_PASS


def cmd_asymptotic(args) -> int:
    if args.symbolic:
        ring, l, td = rr.formal_surface()
        rep = rr.check_asymptotic_vanishing_symbolic(bc.trivial(ring, args.rank), l * args.L, td)
        payload = {
            "mode": "symbolic",
            "rank": args.rank,
            "top_coefficient_classes": [str(c) for c in rep.top_coefficients],
            "verdict": rep.verdict,
        }
    else:
        E = parse_bundle(args.bundle, 2) if args.bundle else bc.trivial(make_projective_space(2), args.rank)
        rep = rr.check_asymptotic_vanishing(E, E.ring.gen(0) * args.L)
        payload = {
            "mode": "P2",
            "rank": rep.rank,
            "polynomial_coefficients": _poly_json(rep.polynomial),
            "top_coefficients": [str(c) for c in rep.top_coefficients],
            "verdict": rep.verdict,
        }
    _emit(payload, args.json)
    return EXIT_PASS if rep.verdict else EXIT_MISMATCH


def cmd_suite(args) -> int:
    records = report.run_suite(seed=args.seed, cap=args.cap, symbolic=True)
    failed = []
    for rec in records:
        _emit_record(rec, args.json)
        failed += rec.mismatches()
    summary = {"suite": "all", "records": len(records), "pass": not failed, "failed": failed}
    _emit(summary, args.json)
    return EXIT_PASS if not failed else EXIT_MISMATCH


# -- argument parsing ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="json", action="store_true", default=True, help="JSON output (default)")
    fmt.add_argument("--text", dest="json", action="store_false", help="human-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--cap", type=int, default=None, help="tableau enumeration cap (default 10^7)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="chernpos", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example", parents=[common], help="reproduce a worked example")
    p.add_argument("name", choices=sorted(report.EXAMPLES))
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("plethysm", parents=[common], help="tableau construction checks")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--check", choices=("all", "equivariance", "zero", "content"), default="all")
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_plethysm)

    p = sub.add_parser("restrict", parents=[common], help="splitting type on a line")
    p.add_argument("name", help=f"one of {sorted(sc.NAMED_RESTRICTIONS)} or O(d)")
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(func=cmd_restrict)

    for name, func, helptext in (
        ("chi", cmd_chi, "Euler characteristic by HRR"),
        ("hilbert", cmd_hilbert, "Hilbert polynomial chi(E(m))"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("bundle", help="bundle expression, e.g. 'sym(T,2)*O(-1)'")
        p.add_argument("--n", type=int, default=2)
        p.set_defaults(func=func)

    p = sub.add_parser("asymptotic-check", parents=[common], help="m^(r+1), m^r coefficients on P(E)")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--bundle", default=None, help="bundle expression on P^2 with c1 = c2 = 0")
    p.add_argument("--L", type=int, default=0, help="L = k times the hyperplane (or l) class")
    p.add_argument("--symbolic", action="store_true", help="formal surface, classes instead of numbers")
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("suite", parents=[common], help="all examples and invariant suites")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except EnumerationTooLarge as exc:
        print(json.dumps({"error": "infeasible", "count": str(exc.count), "cap": str(exc.cap)}))
        return EXIT_INFEASIBLE
    except (UsageError, ChernposError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
