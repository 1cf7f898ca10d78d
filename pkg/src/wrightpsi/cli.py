"""Command-line interface: ``wrightpsi {eval,coeffs,table1,table2,gcoeffs,verify}``.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 the input
is valid but outside the regime of the requested method.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from . import acceptance
from .coeffs import c_coefficients, g_even_generate, g_even_table, termination_index
from .errors import InvalidInput, RegimeError, WrightError
from .evaluate import eval_series, eval_stokes_kappa1, eval_theorem1
from .numkernel import PrecisionCtx, mp_context, to_mp
from .params import PARAM_PREC, WrightParams

SCHEMA = "1"

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_number(text: str):
    """``"7/3"`` and ``"2"`` give Fractions, ``"0.25"`` a Decimal, ``"1+2j"`` an mpc."""
    s = text.strip().replace(" ", "")
    if _RATIONAL.match(s):
        try:
            return Fraction(s)
        except ZeroDivisionError as exc:
            raise argparse.ArgumentTypeError(f"zero denominator in {text!r}") from exc
    if s.endswith(("j", "i")):
        try:
            v = mp_context(PARAM_PREC).mpmathify(s[:-1] + "j")
        except (ValueError, TypeError) as exc:
            raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc
        return v.real if v.imag == 0 else v
    try:
        d = Decimal(s)
    except InvalidOperation as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not d.is_finite():
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return d


def _str(v, digits: int) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else str(v)
    if isinstance(v, (int, str)):
        return str(v)
    try:
        return v.context.nstr(v, digits)
    except AttributeError:
        return str(v)


class Report:
    """Rows of ``{name, expected, actual, tol, pass}`` rendered as text, CSV or JSON."""

    def __init__(self, command: str, params: dict | None = None):
        self.command = command
        self.params = params
        self.results: list[dict] = []
        self.footer: list[str] = []

    def add(self, name, actual, expected=None, tol=None, passed=None):
        self.results.append({"name": name, "expected": expected, "actual": actual, "tol": tol, "pass": passed})

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"schema": SCHEMA, "command": self.command, "params": self.params, "results": self.results}
            return json.dumps(doc, indent=2)
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=["name", "expected", "actual", "tol", "pass"], lineterminator="\n")
            w.writeheader()
            w.writerows(self.results)
            return buf.getvalue().rstrip("\n")
        lines = []
        for r in self.results:
            line = f"{r['name']}: {r['actual']}"
            if r["expected"] is not None:
                line += f"  (expected {r['expected']}"
                line += f", tol {r['tol']})" if r["tol"] is not None else ")"
            if r["pass"] is not None:
                line += "  PASS" if r["pass"] else "  FAIL"
            lines.append(line)
        return "\n".join(lines + self.footer)


def _params(args) -> WrightParams:
    missing = [n for n in ("a", "b", "alpha", "beta") if getattr(args, n) is None]
    if missing:
        raise InvalidInput("missing parameters: " + ", ".join("--" + n for n in missing))
    return WrightParams(args.a, args.b, args.alpha, args.beta)


# -- commands ----------------------------------------------------------------------


def cmd_eval(args) -> tuple[Report, int]:
    p = _params(args)
    ctx = PrecisionCtx.from_digits(args.digits)
    if args.route == "series":
        if args.z is None:
            raise InvalidInput("--z is required for the series route")
        res = eval_series(p, args.z, ctx)
    elif args.route == "stokes":
        if args.x is None:
            raise InvalidInput("--x is required for the stokes route")
        res = eval_stokes_kappa1(p, args.x, M=args.M, ctx=ctx, m=args.m)
    else:
        if args.z is None:
            raise InvalidInput("--z is required for the theorem1 route")
        res = eval_theorem1(p, args.z, m=args.m, J=args.M, ctx=ctx)
    rep = Report("eval", p.as_strings())
    rep.add("value", _str(res.value, args.digits))
    rep.add("route", res.route.value)
    rep.add("m_used", None if res.m_used is None else str(res.m_used))
    rep.add("M_used", None if res.M_used is None else str(res.M_used))
    rep.add("err_estimate", _str(res.err_estimate, 6))
    return rep, 0


def cmd_coeffs(args) -> tuple[Report, int]:
    p = _params(args)
    ctx = PrecisionCtx.from_digits(args.digits)
    cs = c_coefficients(p, args.M, ctx)
    rep = Report("coeffs", p.as_strings())
    rep.add("A0", _str(cs.A0, args.digits))
    J = termination_index(p)
    rep.add("termination_index", None if J is None else str(J))
    last = len(cs.c) - 1 if J is None else min(J, len(cs.c) - 1)
    for j in range(last + 1):
        rep.add(f"c_{j}", _str(cs.c[j], args.digits))
    if J is not None and J < len(cs.c) - 1:
        rep.add("terminates", f"c_j = 0 for j > {J}")
    return rep, 0


def cmd_table1(args) -> tuple[Report, int]:
    rep = Report("table1")
    for row in acceptance.table1_rows(args.digits):
        a, b, alpha = row["params"]
        others = ", ".join(f"m={m}: {v:.4e}" for m, v in row["by_m"].items())
        rep.add(f"column {row['column']} (a={a}, b={b}, alpha={alpha}) j={row['j']} m={row['m_best']} [{others}]",
                f"{row['computed']:.4e}", expected=f"{row['published']:.4e}",
                tol=f"deviation {row['deviation']:.2%}", passed=row["deviation"] <= acceptance.TABLE1_TOL)
    return rep, 0


def cmd_table2(args) -> tuple[Report, int]:
    rep = Report("table2")
    for col, ((a, b, alpha), expected) in enumerate(
            zip(acceptance.TABLE1_COLUMNS, acceptance.TABLE2_VALUES), start=1):
        cs = c_coefficients(WrightParams(a, b, alpha, alpha), len(expected))
        for j, want in enumerate(expected):
            got = cs.c[j]
            rep.add(f"column {col} (a={a}, b={b}, alpha={alpha}) c_{j}", _str(got, args.digits),
                    expected=str(want), tol="0", passed=got == want)
    return rep, 0


def cmd_gcoeffs(args) -> tuple[Report, int]:
    if args.mu is None or args.delta is None:
        raise InvalidInput("--mu and --delta are required")
    mp = PrecisionCtx.from_digits(args.digits).mp
    mu, delta = (v if isinstance(v, Fraction) else to_mp(v, mp) for v in (args.mu, args.delta))
    g = g_even_generate(mu, delta, args.N)
    table = g_even_table(mu, delta, args.N).g_even if args.N <= 4 else None
    rep = Report("gcoeffs", {"mu": str(args.mu), "delta": str(args.delta)})
    exact = isinstance(mu, Fraction) and isinstance(delta, Fraction)
    tol = 0 if exact else mp.ldexp(1, 8 - mp.prec)
    for k, v in enumerate(g.g_even):
        if table is None:
            rep.add(f"g_{2 * k}", _str(v, args.digits))
        else:
            ok = v == table[k] if exact else abs(v - table[k]) <= tol * max(1, abs(table[k]))
            rep.add(f"g_{2 * k}", _str(v, args.digits), expected=_str(table[k], args.digits),
                    tol=_str(tol, 3), passed=ok)
    return rep, 0


def cmd_verify(args) -> tuple[Report, int]:
    only = args.only or None
    try:
        results = acceptance.run_criteria(args.digits, only)
    except KeyError as exc:
        raise InvalidInput(str(exc.args[0])) from exc
    rep = Report("verify")
    for crit in results:
        for chk in crit.checks:
            d = chk.as_dict()
            rep.add(f"{crit.number}.{crit.key}: {d['name']}", d["actual"], d["expected"], d["tol"], d["pass"])
    rep.footer = [c.summary_line() for c in results]
    return rep, 0 if all(c.passed for c in results) else 1


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=50, help="working precision in decimal digits")
    common.add_argument("--format", choices=["text", "csv", "json"], default=None,
                        help="output format (default: json for verify, text otherwise)")

    params = argparse.ArgumentParser(add_help=False)
    for name in ("a", "b", "alpha", "beta"):
        params.add_argument(f"--{name}", type=parse_number, help="rational (7/3), decimal or complex (1+2j)")

    parser = argparse.ArgumentParser(prog="wrightpsi", description="Wright function 1Psi1: values, coefficients, checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common, params], help="evaluate 1Psi1")
    p.add_argument("--z", type=parse_number, help="argument (series and theorem1 routes)")
    p.add_argument("--x", type=parse_number, help="positive x for the stokes route, evaluates at -x")
    p.add_argument("--route", choices=["series", "stokes", "theorem1"], default="series")
    p.add_argument("--M", type=int, default=5, help="exponential truncation")
    p.add_argument("--m", type=int, default=None, help="algebraic truncation (default: least term)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("coeffs", parents=[common, params], help="normalised coefficients c_j")
    p.add_argument("--M", type=int, default=6, help="number of coefficients (at most 60)")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("table1", parents=[common], help="relative errors at x=25 against the published table")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("table2", parents=[common], help="c_0..c_5 against the published table")
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("gcoeffs", parents=[common], help="g_{2k}(mu; delta)")
    p.add_argument("--mu", type=parse_number)
    p.add_argument("--delta", type=parse_number)
    p.add_argument("--N", type=int, default=4, help="number of even coefficients")
    p.set_defaults(func=cmd_gcoeffs)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", action="append", choices=list(acceptance.CRITERIA),
                   help="restrict to one criterion (repeatable)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep, code = args.func(args)
    except InvalidInput as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except RegimeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except WrightError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    fmt = args.format or ("json" if args.command == "verify" else "text")
    print(rep.render(fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
