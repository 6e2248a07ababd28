"""
Command-line front end.

    solve roots --prime 7 -a p^-1*-3 -b p^-1*-4 --domain qp
    solve count --prime 5 -a -1 -b 5 --domain units --json
    oracle-check --prime 5 --grid "alpha=-1..1,beta=-1..1"

Exit status: 0 when the question was answered (the verdict is in the
output), 2 for usage errors, 3 for unsupported cases such as p <= 3.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .cardano import cardano_applicable, cardano_solve
from .cubic import DEFAULT_PRECISION, CubicEquation, Domain, count, roots, solvable
from .errors import UnsupportedCaseError
from .ffield import fp_cubic_count
from .hensel import quadratic_solve_qp
from .oracle import DEFAULT_K, DEFAULT_T, escalating, qp_oracle, zp_oracle
from .padic import PadicNumber, check_prime, expand

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 2, 3

_INT = r"[+-]?\d+"
_RATIO = rf"{_INT}(?:/{_INT})?"
_LITERAL = re.compile(rf"^(?:(?P<plain>{_RATIO})|p(?:\^(?P<exp>{_INT}))?(?:\*(?P<rest>{_RATIO}))?)$")

_VALUE_FLAGS = {"-a", "-b", "-q", "-r"}


def parse_coefficient(text: str, p: int) -> Fraction:
    """Read ``INT``, ``INT/INT``, ``p``, ``p^INT`` or ``p^INT*INT[/INT]``."""
    m = _LITERAL.match(text.strip().replace(" ", ""))
    if not m:
        raise ValueError(f"malformed coefficient {text!r}")
    try:
        if m["plain"] is not None:
            return Fraction(m["plain"])
        scale = Fraction(p) ** int(m["exp"] or 1)
        return scale * (Fraction(m["rest"]) if m["rest"] else 1)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def _fmt(x: Fraction) -> str:
    return str(x)


def _root_json(x: PadicNumber, mult: int, digits: int | None) -> dict:
    if x.is_exact_zero:
        return {"valuation": None, "digits": [], "multiplicity": mult, "text": "0"}
    ds = list(x.digits[:digits] if digits else x.digits)
    return {"valuation": x.valuation, "digits": ds, "multiplicity": mult, "text": _root_text(x, digits)}


def _root_text(x: PadicNumber, digits: int | None) -> str:
    if x.is_exact_zero:
        return "0"
    ds = x.digits[:digits] if digits else x.digits
    tail = " ..." if len(ds) < x.precision else ""
    return f"{x.p}^{x.valuation} * ({' '.join(map(str, ds))}{tail})"


def _base(command, p, a=None, b=None, domain=None):
    return {
        "command": command,
        "p": p,
        "a": None if a is None else _fmt(a),
        "b": None if b is None else _fmt(b),
        "domain": domain,
        "branch": None,
        "solvable": None,
        "count_multiplicity": None,
        "count_distinct": None,
        "roots": [],
    }


def _with_roots(report, found, digits):
    report["roots"] = [_root_json(x, m, digits) for x, m in found]
    report["count_multiplicity"] = sum(m for _, m in found)
    report["count_distinct"] = len(found)
    report["solvable"] = bool(found)
    return report


def _precision(args) -> int:
    if args.precision is not None:
        return args.precision
    env = os.environ.get("PADIC_DEFAULT_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"PADIC_DEFAULT_PRECISION must be an integer, got {env!r}") from None
    return DEFAULT_PRECISION


def _equation(args) -> CubicEquation:
    return CubicEquation(args.prime, parse_coefficient(args.a, args.prime), parse_coefficient(args.b, args.prime))


def _cmd_cubic(args) -> dict:
    eq = _equation(args)
    dom = Domain(args.domain)
    report = _base(args.command, eq.p, eq.a, eq.b, dom.value)
    if args.command == "solvable":
        s = solvable(eq, dom)
        report.update(branch=s.branch, solvable=s.solvable, scaling_exponents=list(s.scaling_exponents))
    elif args.command == "count":
        c = count(eq, dom)
        report.update(branch=c.branch, solvable=c.count_with_multiplicity > 0,
                      count_multiplicity=c.count_with_multiplicity, count_distinct=c.count_distinct)
    else:
        rs = roots(eq, dom, _precision(args))
        _with_roots(report, rs.roots, args.digits)
        report["branch"] = rs.branch
    return report


def _cmd_cardano(args) -> dict:
    eq = _equation(args)
    report = _base("cardano", eq.p, eq.a, eq.b, Domain.FIELD.value)
    if eq.ab_zero:
        raise ValueError("Cardano's formula is only examined for a, b nonzero")
    flag = cardano_applicable(eq)
    report.update(branch=flag.branch, applicable=flag.applicable, solvable=solvable(eq, Domain.FIELD).solvable)
    if flag.applicable:
        sol = cardano_solve(eq, _precision(args))
        report["roots"] = [_root_json(sol.root, 1, args.digits)]
        report["delta0"] = sol.delta0
    return report


def _cmd_fp_count(args) -> dict:
    p = check_prime(args.prime)
    if p <= 3:
        raise UnsupportedCaseError(f"the F_p cubic count needs p > 3, got p={p}")
    a0 = parse_coefficient(args.a, p)
    b0 = parse_coefficient(args.b, p)
    if a0.denominator != 1 or b0.denominator != 1:
        raise ValueError("fp-count takes integer residues")
    rep = fp_cubic_count(int(a0), int(b0), p)
    report = _base("fp-count", p, a0, b0, "fp")
    report.update(branch="fp", solvable=rep.count > 0, count_multiplicity=rep.count, Dbar=rep.Dbar, u=rep.u)
    return report


def _cmd_quadratic(args) -> dict:
    p = check_prime(args.prime)
    q, r = parse_coefficient(args.q, p), parse_coefficient(args.r, p)
    report = _base("quadratic", p, domain=Domain.FIELD.value)
    report.update(q=_fmt(q), r=_fmt(r), branch="quadratic")
    return _with_roots(report, quadratic_solve_qp(q, r, _precision(args), p), args.digits)


def _depress(c3, c2, c1, c0):
    """``(a, b, shift)`` with ``x = y - shift`` turning the cubic into y^3 + a y = b."""
    if c3 == 0:
        raise ValueError("leading coefficient must be nonzero")
    b2, b1, b0 = c2 / c3, c1 / c3, c0 / c3
    shift = b2 / 3
    a = b1 - b2 * b2 / 3
    b = -(2 * b2**3 / 27 - b2 * b1 / 3 + b0)
    return a, b, shift


def _cmd_general(args) -> dict:
    p = args.prime
    c3, c2, c1, c0 = (parse_coefficient(t, p) for t in args.coeffs)
    a, b, shift = _depress(c3, c2, c1, c0)
    eq = CubicEquation(p, a, b)
    dom = Domain(args.domain)
    N = _precision(args)
    rs = roots(eq, Domain.FIELD, N + 8)
    found = []
    for y, m in rs.roots:
        if y.is_exact_zero:
            x = expand(-shift, p, N)
        elif shift == 0:
            x = y
        else:
            x = y - shift
        v = x.valuation if not x.is_zero else float("inf")
        if dom.admits(v):
            found.append((x.truncate(N), m))
    report = _base("general-cubic", p, a, b, dom.value)
    report["coefficients"] = [_fmt(c) for c in (c3, c2, c1, c0)]
    report["shift"] = _fmt(shift)
    _with_roots(report, found, args.digits)
    report["branch"] = f"depressed:{rs.branch}"
    return report


def _parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*([+-]?\d+)\.\.([+-]?\d+)\s*", text)
    if not m:
        raise ValueError(f"malformed range {text!r}")
    lo, hi = int(m[1]), int(m[2])
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def parse_grid(text: str) -> tuple[tuple[int, int], tuple[int, int]]:
    """``"LO..HI"`` or ``"alpha=LO..HI,beta=LO..HI"``."""
    if "=" not in text:
        r = _parse_range(text)
        return r, r
    parts = dict(part.split("=", 1) for part in text.split(","))
    if set(parts) != {"alpha", "beta"}:
        raise ValueError(f"grid needs alpha= and beta=, got {text!r}")
    return _parse_range(parts["alpha"]), _parse_range(parts["beta"])


def _cmd_oracle_check(args) -> dict:
    p = check_prime(args.prime)
    (alo, ahi), (blo, bhi) = parse_grid(args.grid)
    checked, mismatches = 0, []
    for al in range(alo, ahi + 1):
        for be in range(blo, bhi + 1):
            for a0 in range(1, p):
                for b0 in range(1, p):
                    eq = CubicEquation(p, Fraction(p) ** al * a0, Fraction(p) ** be * b0)
                    verdicts = {
                        "units": escalating(lambda e, K: zp_oracle(e, K, units=True), eq, K=args.k),
                        "zp": escalating(lambda e, K: zp_oracle(e, K), eq, K=args.k),
                        "qp": escalating(lambda e, K, T: qp_oracle(e, K, T), eq, K=args.k, T=args.t),
                    }
                    for dom, o in verdicts.items():
                        c = count(eq, Domain(dom))
                        checked += 1
                        if (c.count_with_multiplicity, c.count_distinct) != (o.count, o.count_distinct):
                            mismatches.append({"alpha": al, "beta": be, "a0": a0, "b0": b0, "domain": dom,
                                               "solver": c.count_with_multiplicity, "oracle": o.count})
    return {"command": "oracle-check", "p": p, "grid": args.grid, "checked": checked,
            "mismatches": len(mismatches), "details": mismatches[:20]}


def _print_text(report: dict) -> None:
    if report["command"] == "oracle-check":
        print(f"p={report['p']} grid {report['grid']}: checked {report['checked']}, "
              f"mismatches {report['mismatches']}")
        for d in report["details"]:
            print(f"  mismatch {d}")
        return
    head = f"p={report['p']}"
    if report.get("a") is not None:
        head += f"  a={report['a']}  b={report['b']}"
    if report.get("q") is not None:
        head += f"  q={report['q']}  r={report['r']}"
    if report.get("domain"):
        head += f"  domain={report['domain']}"
    print(head)
    if report.get("branch"):
        print(f"branch: {report['branch']}")
    if "applicable" in report:
        print(f"applicable: {str(report['applicable']).lower()}")
    if report.get("solvable") is not None:
        print(f"solvable: {str(report['solvable']).lower()}")
    if report.get("count_multiplicity") is not None:
        distinct = report.get("count_distinct")
        extra = f" (distinct {distinct})" if distinct is not None else ""
        print(f"count: {report['count_multiplicity']}{extra}")
    for r in report["roots"]:
        tail = f"  [multiplicity {r['multiplicity']}]" if r["multiplicity"] != 1 else ""
        print(f"root: {r['text']}{tail}")


def _add_common(sp, *, domain=True, cubic=True):
    sp.add_argument("--prime", type=int, required=True)
    if cubic:
        sp.add_argument("-a", required=True, help="coefficient of x")
        sp.add_argument("-b", required=True, help="right-hand side")
    if domain:
        sp.add_argument("--domain", choices=[d.value for d in Domain], default=Domain.FIELD.value)
    sp.add_argument("--precision", "-N", type=int, default=None)
    sp.add_argument("--digits", type=int, default=None, help="print at most this many digits per root")
    sp.add_argument("--json", action="store_true")


def _add_oracle_args(sp):
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--k", type=int, default=DEFAULT_K)
    sp.add_argument("--t", type=int, default=DEFAULT_T)
    sp.add_argument("--grid", default="-1..1")
    sp.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="solve", description="p-adic depressed cubic x^3 + a x = b")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solvable", "count", "roots"):
        _add_common(sub.add_parser(name))
    _add_common(sub.add_parser("cardano"), domain=False)
    _add_common(sub.add_parser("fp-count"), domain=False)
    quad = sub.add_parser("quadratic", help="x^2 + q x + r = 0 over Q_p")
    _add_common(quad, domain=False, cubic=False)
    quad.add_argument("-q", required=True)
    quad.add_argument("-r", required=True)
    gen = sub.add_parser("general-cubic", help="c3 x^3 + c2 x^2 + c1 x + c0 = 0")
    _add_common(gen, cubic=False)
    gen.add_argument("--coeffs", required=True, help="c3,c2,c1,c0 (comma separated)")
    _add_oracle_args(sub.add_parser("oracle-check"))
    return parser


def _normalize_argv(argv: list[str]) -> list[str]:
    """Glue values that start with '-' to their flag so argparse keeps them."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(tok + argv[i + 1])
            i += 2
        elif tok == "--coeffs" and i + 1 < len(argv) and "," not in argv[i + 1]:
            out.append("--coeffs=" + ",".join(argv[i + 1:i + 5]))
            i += 5
        else:
            out.append(tok)
            i += 1
    return out


_HANDLERS = {
    "solvable": _cmd_cubic,
    "count": _cmd_cubic,
    "roots": _cmd_cubic,
    "cardano": _cmd_cardano,
    "fp-count": _cmd_fp_count,
    "quadratic": _cmd_quadratic,
    "general-cubic": _cmd_general,
    "oracle-check": _cmd_oracle_check,
}


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command == "general-cubic":
        args.coeffs = args.coeffs.split(",")
        if len(args.coeffs) != 4:
            print("solve: error: --coeffs needs exactly four values", file=sys.stderr)
            return EXIT_USAGE
    try:
        report = _HANDLERS[args.command](args)
    except UnsupportedCaseError as exc:
        print(f"solve: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValueError, TypeError) as exc:
        print(f"solve: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        _print_text(report)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


def oracle_main() -> None:
    sys.exit(run(["oracle-check", *sys.argv[1:]]))
