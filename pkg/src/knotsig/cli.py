"""Command-line interface.

Exit codes: 0 success, 2 bad input (flags or expression syntax), 3 when a
mathematical precondition fails.  Rationals are printed as ``a/b``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence, TextIO

from . import conditions, covers, dcrit, knotexpr
from .formatting import format_rational, parse_rational
from .seifert import arf_from_alexander, fox_milnor, m_parameter

SCHEMA = 1
DEFAULT_BOUND = 1000


class _UsageError(Exception):
    pass


def _rat(x) -> str:
    return format_rational(x)


def _emit_json(out: TextIO, kind: str, payload: dict[str, Any]) -> None:
    doc = {"schema": SCHEMA, "kind": kind}
    doc.update(payload)
    out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def _expr(text: str) -> knotexpr.KnotExpr:
    return knotexpr.parse(text)


def _positive(name: str, v: int, least: int = 1) -> int:
    if v < least:
        raise _UsageError(f"--{name} must be at least {least}, got {v}")
    return v


# --- subcommands ----------------------------------------------------------------------


def cmd_sig_eval(a, out: TextIO) -> None:
    e = _expr(a.expr)
    try:
        x = parse_rational(a.at)
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(str(exc)) from None
    if not 0 <= x <= 1:
        raise _UsageError(f"--at must lie in [0, 1], got {_rat(x)}")
    v = knotexpr.signature_at(e, x)
    if a.json:
        _emit_json(
            out,
            "signature",
            {
                "expr": str(e),
                "at": _rat(x),
                "signature": _rat(v.signature),
                "nullity": v.nullity,
                "is_jump": v.is_jump,
            },
        )
    else:
        out.write(_rat(v.signature) + "\n")


def cmd_sig_plot(a, out: TextIO) -> None:
    e = _expr(a.expr)
    n = _positive("denominator", a.denominator)
    rows = []
    for k in range(n + 1):
        x = Fraction(k, n)
        rows.append((x, knotexpr.signature_at(e, x).signature))
    if a.svg:
        try:
            f = knotexpr.signature_step_function(e)
        except ValueError as exc:
            raise ValueError(f"cannot plot exactly: {exc}") from None
        with open(a.svg, "w", encoding="utf-8") as fh:
            fh.write(f.to_svg(title=str(e)))
    if a.json:
        _emit_json(out, "samples", {"expr": str(e), "samples": [[_rat(x), _rat(y)] for x, y in rows]})
    else:
        out.write("x,value\n")
        for x, y in rows:
            out.write(f"{_rat(x)},{_rat(y)}\n")


def cmd_alex(a, out: TextIO) -> None:
    e = _expr(a.expr)
    d = knotexpr.alexander_of(e)
    if a.json:
        _emit_json(
            out,
            "alexander",
            {"expr": str(e), "low": d.low, "coefficients": list(d.poly.coeffs), "text": str(d)},
        )
    else:
        out.write(str(d) + "\n")


def cmd_arf(a, out: TextIO) -> None:
    e = _expr(a.expr)
    d = knotexpr.alexander_of(e)
    val = arf_from_alexander(d)
    if a.json:
        _emit_json(out, "arf", {"expr": str(e), "arf": val, "delta_at_minus_one": d(-1)})
    else:
        out.write(f"{val}\n")


def cmd_foxmilnor(a, out: TextIO) -> None:
    e = _expr(a.expr)
    r = fox_milnor(knotexpr.alexander_of(e))
    if a.json:
        _emit_json(
            out,
            "foxmilnor",
            {
                "expr": str(e),
                "determinant": r.determinant,
                "determinant_is_square": r.determinant_is_square,
                "decided": r.decided,
                "passes": r.passes,
                "factor": None if r.factor is None else str(r.factor),
                "reason": r.reason,
            },
        )
    else:
        verdict = "pass" if r.passes else "fail"
        if not r.decided:
            verdict = "undecided"
        out.write(f"{verdict}: {r.reason}\n")
        if r.factor is not None:
            out.write(f"f = {r.factor}\n")


def _report_dict(r: conditions.ConditionReport) -> dict[str, Any]:
    return {
        "m": r.m,
        "p": r.p,
        "a": r.a,
        "r": r.r,
        "cosets": [list(c) for c in r.cosets],
        "sums": [_rat(s) for s in r.sums],
        "verdict": r.verdict,
    }


def cmd_cond(a, out: TextIO) -> None:
    e = _expr(a.expr)
    _positive("m", a.m)
    if (a.p is None) == (a.pmax is None):
        raise _UsageError("give exactly one of --p or --pmax")
    if a.p is not None:
        reports = [conditions.check_signature_conditions(e, a.m, _positive("p", a.p, 2))]
    else:
        ps = conditions.valid_primes_for(a.m, _positive("pmax", a.pmax, 2))
        reports = [conditions.check_signature_conditions(e, a.m, p) for p in ps]
    if a.json:
        if a.p is not None:
            _emit_json(out, "conditions", {"expr": str(e), **_report_dict(reports[0])})
        else:
            _emit_json(
                out,
                "conditions_range",
                {
                    "expr": str(e),
                    "m": a.m,
                    "pmax": a.pmax,
                    "reports": [_report_dict(r) for r in reports],
                    "verdict": "pass" if all(r.passes for r in reports) else "fail",
                },
            )
        return
    for r in reports:
        sums = " ".join(_rat(s) for s in r.sums)
        out.write(f"m={r.m} p={r.p} a={r.a} r={r.r} cosets={len(r.cosets)} sums=[{sums}] {r.verdict}\n")


def cmd_avg(a, out: TextIO) -> None:
    e = _expr(a.expr)
    r = conditions.check_averaging(e, _positive("m", a.m), _positive("pmax", a.pmax, 2))
    if a.json:
        _emit_json(
            out,
            "averaging",
            {
                "expr": str(e),
                "m": r.m,
                "pmax": r.p_max,
                "sums": {str(p): _rat(Fraction(s, 2)) for p, s in r.sums_twice.items()},
                "failures": r.failures,
                "verdict": "pass" if r.passes else "fail",
            },
        )
    else:
        for p, s in r.sums_twice.items():
            out.write(f"p={p} sum={_rat(Fraction(s, 2))}\n")
        out.write(("pass" if r.passes else "fail") + "\n")


def cmd_primeset(a, out: TextIO) -> None:
    _positive("m", a.m)
    if a.thm == 7:
        bound = _positive("bound", a.bound if a.bound is not None else DEFAULT_BOUND, 2)
        try:
            exclude = [int(t) for t in a.exclude.split(",") if t.strip()] if a.exclude else []
        except ValueError:
            raise _UsageError(f"--exclude expects comma-separated integers, got {a.exclude!r}") from None
        vals = conditions.prime_power_set(a.m, _positive("qmax", a.qmax, 2), bound, exclude)
    else:
        if a.bound is not None or a.exclude:
            raise _UsageError("--bound and --exclude apply to --thm 7 only")
        vals = conditions.simple_prime_set(a.m, _positive("qmax", a.qmax, 3))
    if a.json:
        _emit_json(out, "primeset", {"m": a.m, "thm": a.thm, "qmax": a.qmax, "values": vals})
    else:
        out.write(" ".join(str(v) for v in vals) + "\n")


def cmd_cover(a, out: TextIO) -> None:
    text = a.knot if a.knot is not None else a.expr
    if text is None:
        raise _UsageError("cover needs a knot expression (positional or --knot)")
    if a.knot is not None and a.expr is not None:
        raise _UsageError("give the knot expression once")
    e = _expr(text)
    q = _positive("q", a.q, 2)
    V = knotexpr.seifert_of(e)
    if V is None:
        raise ValueError(f"no Seifert matrix available for {e}")
    pres = covers.gamma_presentation(V, q)
    factors = list(pres.invariant_factors)
    doc: dict[str, Any] = {
        "expr": str(e),
        "q": q,
        "invariant_factors": factors,
        "order": pres.order,
        "deck_eigenvalues": None,
        "metabolizers": None,
    }
    if a.p is not None:
        p = a.p
        doc["p"] = p
        doc["deck_eigenvalues"] = list(covers.deck_action_mod_p(V, q, p).eigenvalues)
        if V.size == 2 and (m_parameter(V) or 0) >= 1:
            mb = covers.metabolizer_eigenspaces(V, q, p)
            doc["metabolizers"] = {
                "count": mb.count,
                "lines": [list(x) for x in mb.isotropic_lines],
                "eigenlines": [list(x) for x in mb.eigenlines],
                "lines_total": p + 1,
            }
    # always JSON; --json is accepted for uniformity
    _emit_json(out, "cover", doc)


def cmd_dcrit(a, out: TextIO) -> None:
    if (a.d is None) == (a.scan is None):
        raise _UsageError("give exactly one of --d or --scan")
    jobs = _positive("jobs", a.jobs)
    if a.d is not None:
        v = dcrit.d_determinant(a.d)
        if a.json:
            _emit_json(out, "dcrit", {"d": a.d, "value": _rat(v), "zero": v == 0})
        else:
            out.write(_rat(v) + "\n")
        return
    if a.scan < 3:
        raise _UsageError("--scan must be at least 3")
    out.write("d,status,digits\n")
    for d, zero, digits in dcrit.scan_rows(a.scan, jobs):
        out.write(f"{d},{'zero' if zero else 'nonzero'},{digits}\n")
        out.flush()


def cmd_tau(a, out: TextIO) -> None:
    e = _expr(a.expr)
    r = knotexpr.tau_of(e)
    if a.json:
        _emit_json(out, "tau", {"expr": str(e), "tau": r.value, "genus": r.genus, "trace": list(r.trace)})
        if r.value is None:
            raise _Silent(3)
        return
    if r.value is None:
        raise ValueError("tau is not determined by the composition rules: " + "; ".join(r.trace))
    out.write(f"{r.value}\n")


class _Silent(Exception):
    def __init__(self, code: int):
        self.code = code


# --- parser ---------------------------------------------------------------------------



class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")

    p = _Parser(prog="knotsig", description="Exact concordance invariants of knot expressions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sig = sub.add_parser("sig", help="Levine-Tristram signatures")
    sigsub = sig.add_subparsers(dest="sigcommand", required=True, parser_class=_Parser)
    ev = sigsub.add_parser("eval", parents=[common], help="signature at a rational point")
    ev.add_argument("expr")
    ev.add_argument("--at", required=True, help="rational j/p in [0,1]")
    ev.set_defaults(func=cmd_sig_eval)
    pl = sigsub.add_parser("plot", parents=[common], help="samples at k/N as CSV, optional SVG")
    pl.add_argument("expr")
    pl.add_argument("--denominator", type=int, required=True)
    pl.add_argument("--svg", help="write an SVG step plot here")
    pl.set_defaults(func=cmd_sig_plot)

    for name, func, text in (
        ("alex", cmd_alex, "Alexander polynomial"),
        ("arf", cmd_arf, "Arf invariant"),
        ("foxmilnor", cmd_foxmilnor, "Fox-Milnor factorization test"),
        ("tau", cmd_tau, "tau from the composition rules"),
    ):
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("expr")
        sp.set_defaults(func=func)

    c = sub.add_parser("cond", parents=[common], help="(m,p)-signature conditions")
    c.add_argument("expr")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--p", type=int)
    c.add_argument("--pmax", type=int)
    c.set_defaults(func=cmd_cond)

    av = sub.add_parser("avg", parents=[common], help="signature averaging condition")
    av.add_argument("expr")
    av.add_argument("--m", type=int, required=True)
    av.add_argument("--pmax", type=int, required=True)
    av.set_defaults(func=cmd_avg)

    ps = sub.add_parser("primeset", parents=[common], help="prime sets from cover homology orders")
    ps.add_argument("--m", type=int, required=True)
    ps.add_argument("--thm", type=int, choices=(7, 8), required=True)
    ps.add_argument("--qmax", type=int, required=True)
    ps.add_argument("--bound", type=int, help=f"largest prime power (--thm 7, default {DEFAULT_BOUND})")
    ps.add_argument("--exclude", help="comma-separated primes to drop (--thm 7)")
    ps.set_defaults(func=cmd_primeset)

    cv = sub.add_parser("cover", parents=[common], help="homology of the q-fold branched cover (JSON)")
    cv.add_argument("expr", nargs="?")
    cv.add_argument("--knot")
    cv.add_argument("--q", type=int, required=True)
    cv.add_argument("--p", type=int)
    cv.set_defaults(func=cmd_cover)

    dc = sub.add_parser("dcrit", parents=[common], help="the fractional-part determinant")
    dc.add_argument("--d", type=int)
    dc.add_argument("--scan", type=int, metavar="MAX")
    dc.add_argument("--jobs", type=int, default=1)
    dc.set_defaults(func=cmd_dcrit)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.func(args, out)
    except _UsageError as exc:
        err.write(f"knotsig: error: {exc}\n")
        return 2
    except knotexpr.ParseError as exc:
        err.write(f"knotsig: parse error: {exc}\n")
        return 2
    except _Silent as exc:
        return exc.code
    except (ValueError, ArithmeticError) as exc:
        err.write(f"knotsig: {exc}\n")
        return 3
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)

