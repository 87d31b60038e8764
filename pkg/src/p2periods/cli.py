"""
Command line interface.

    p2periods gw --dmax 6
    p2periods eisenstein --order 10
    p2periods taylor --nmax 2
    p2periods invert --nmax 3 --format latex
    p2periods verify --suite all
    p2periods roundtrip --tau 2i --precision 128

Payloads go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 a check failed, 2 usage error.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import gw_potential, inversion, modular
from .suites import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# ---------------------------------------------------------------------------
# serialization

def ser_int(n):
    return str(int(n))


def ser_rational(x):
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _sorted_terms(p):
    return sorted(p.terms.items(), key=lambda kv: (kv[0][1:], kv[0][0]))


def ser_qm(p):
    """A quasi-modular polynomial as a list of monomials.

    In pi form the power of pi is always even and is emitted as ``pi2``;
    in iota form (``iota = 2 pi i``) the exponent is emitted as ``iota``.
    """
    out = []
    for (i, a, b, c), v in _sorted_terms(p):
        m = {"coeff": ser_rational(v)}
        if p.unit == "pi":
            m["pi2"] = i // 2
        else:
            m["iota"] = i
        m.update({"E2": a, "E4": b, "E6": c})
        out.append(m)
    return out


def ser_qmexpr(e):
    return {"x_exp": e.x_exp,
            "tau_terms": {str(k): ser_qm(p) for k, p in sorted(e.terms.items())}}


def text_qm(p):
    return repr(p)


def latex_qm(p):
    """E-monomial form with pi^(2k) factored into each coefficient."""
    if not p.terms:
        return "0"
    sym = r"\pi" if p.unit == "pi" else r"\iota"
    parts = []
    for (i, a, b, c), v in _sorted_terms(p):
        sign = "-" if v < 0 else "+"
        v = abs(v)
        coef = "" if v == 1 else (str(v.numerator) if v.denominator == 1
                                  else rf"\frac{{{v.numerator}}}{{{v.denominator}}}")
        factors = []
        if i:
            factors.append(sym if i == 1 else f"{sym}^{{{i}}}")
        for name, e in (("E_2", a), ("E_4", b), ("E_6", c)):
            if e:
                factors.append(name if e == 1 else f"{name}^{{{e}}}")
        body = coef + " ".join(factors)
        parts.append((sign, body or "1"))
    first_sign, first = parts[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def emit(payload, fmt, text_lines, latex_lines=None):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    elif fmt == "latex" and latex_lines is not None:
        print("\n".join(latex_lines))
    else:
        print("\n".join(text_lines))


def payload(command, params, data, anchors):
    return {"command": command, "params": params, "data": data, "paper_anchors": anchors}


# ---------------------------------------------------------------------------
# commands

def cmd_gw(args):
    table = gw_potential.kontsevich_numbers(args.dmax)
    data = {"N": [ser_int(n) for n in table.N]}
    lines = [f"N_{d} = {n}" for d, n in enumerate(table.N, 1)]
    latex = [rf"N_{{{d}}} = {n}" for d, n in enumerate(table.N, 1)]
    emit(payload("gw", {"dmax": args.dmax}, data, ["genus-zero recursion"]),
         args.format, lines, latex)
    return EXIT_OK


def cmd_eisenstein(args):
    order = args.order
    series = {"E2": modular.eisenstein(2, order), "E4": modular.eisenstein(4, order),
              "E6": modular.eisenstein(6, order)}
    series["Delta"] = series["E4"] ** 3 - series["E6"] * series["E6"]
    data = {k: [ser_int(modular.q_coeff(s, n)) for n in range(order)] for k, s in series.items()}
    lines = [f"{k} = {_qseries_text(v)} + O(q^{order})" for k, v in data.items()]
    emit(payload("eisenstein", {"order": order}, data, ["Eisenstein series"]),
         args.format, lines)
    return EXIT_OK


def _qseries_text(coeffs):
    parts = []
    for n, c in enumerate(coeffs):
        c = int(c)
        if c == 0:
            continue
        mono = "" if n == 0 else ("q" if n == 1 else f"q^{n}")
        mag = str(abs(c)) if (abs(c) != 1 or not mono) else ""
        body = f"{mag} {mono}".strip() if mag and mono else (mag or mono)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) or "0"


def cmd_taylor(args):
    try:
        td = inversion.taylor_coefficients(args.nmax)
    except inversion.InversionError as exc:
        print(f"taylor: {exc}", file=sys.stderr)
        return EXIT_FAIL
    data = {"Z3": [ser_qmexpr(e) for e in td.z3],
            "Z2_plus_2tau_Z3": [ser_qmexpr(e) for e in td.z2_shift],
            "Z1": [ser_qmexpr(e) for e in td.z1]}
    lines = []
    for n in range(args.nmax + 1):
        for name, e in (("Z3", td.z3[n]), ("(Z2 + 2 tau Z3)", td.z2_shift[n]), ("Z1", td.z1[n])):
            body = " + ".join(f"tau^{k} ({text_qm(p)})" for k, p in sorted(e.terms.items()))
            lines.append(f"{name}^({n}) = x^{e.x_exp} [{body}]")
    emit(payload("taylor", {"nmax": args.nmax}, data, ["Taylor coefficients of the period map"]),
         args.format, lines)
    return EXIT_OK


def cmd_invert(args):
    try:
        res = inversion.invert_period_map(args.nmax)
    except inversion.InversionError as exc:
        print(f"invert: {exc}", file=sys.stderr)
        return EXIT_FAIL
    printed = inversion.compare_with_printed(res)
    data = {"lambda": [ser_qm(p) for p in res.lam],
            "Q": [ser_qm(p) for p in res.Q],
            "t_relation": res.t_relation,
            "checks": dict(res.checks),
            "matches_displayed": printed}
    lines = [f"# {res.t_relation}"]
    latex = [r"% t = -\frac{1}{32}(\tau_1-\tau_2)^2 y^2"]
    for n in range(args.nmax + 1):
        lines.append(f"lambda_{n} = {text_qm(res.lam[n])}")
        lines.append(f"Q_{n} = {text_qm(res.Q[n])}")
        latex.append(rf"\lambda_{{{n}}} = {latex_qm(res.lam[n])}")
        latex.append(rf"Q_{{{n}}} = {latex_qm(res.Q[n])}")
    emit(payload("invert", {"nmax": args.nmax}, data, ["inversion of the period map"]),
         args.format, lines, latex)
    failed = [k for k, v in res.checks.items() if not v]
    if failed:
        print(f"invert: check failed: {failed[0]}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    cfg = {"order": args.order, "precision": args.precision, "nmax": args.nmax}
    results = run_suites(names, cfg)
    data = {"suites": [{"suite": r.suite, "ok": r.ok,
                        "checks": [{"name": c.name, "status": "pass" if c.ok else "fail",
                                    "anchor": c.anchor, "detail": c.detail} for c in r.checks],
                        "notes": r.notes} for r in results]}
    anchors = sorted({c.anchor for r in results for c in r.checks})
    lines = []
    for r in results:
        lines.append(f"[{r.suite}] {'ok' if r.ok else 'FAILED'}")
        for c in r.checks:
            lines.append(f"  {'PASS' if c.ok else 'FAIL'}  {c.name}")
        for note in r.notes:
            lines.append(f"  note: {note}")
    emit(payload("verify", {"suite": args.suite, "order": args.order,
                            "precision": args.precision, "nmax": args.nmax}, data, anchors),
         args.format, lines)
    for r in results:
        bad = r.first_failure()
        if bad is not None:
            print(f"verify: first failing check: [{r.suite}] {bad.name}", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def parse_tau(s):
    try:
        tau = complex(s.strip().replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse tau {s!r}")
    if tau.imag <= 0:
        raise argparse.ArgumentTypeError("tau must lie in the upper half plane")
    return tau


def cmd_roundtrip(args):
    try:
        r = inversion.numeric_roundtrip(args.tau, args.precision, method=args.method)
    except inversion.ConvergenceError as exc:
        print(f"roundtrip: {exc}; try --method hyp2f1", file=sys.stderr)
        return EXIT_FAIL
    thr = inversion.roundtrip_threshold(args.precision)
    ok = r < thr
    data = {"tau": [repr(args.tau.real), repr(args.tau.imag)], "residual": str(r),
            "threshold": str(thr), "ok": bool(ok)}
    lines = [f"tau = {args.tau}", f"residual = {r}", f"threshold = {thr}",
             "PASS" if ok else "FAIL"]
    emit(payload("roundtrip", {"tau": str(args.tau), "precision": args.precision,
                               "method": args.method}, data, ["numeric period map"]),
         args.format, lines)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser

def _positive(s):
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonnegative(s):
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {s!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _precision(s):
    v = _positive(s)
    if v < 64:
        raise argparse.ArgumentTypeError("precision must be at least 64 bits")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="p2periods",
                                description="Period map of the quantum cohomology of P^2.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "text")):
        sp.add_argument("--format", choices=formats, default="json")

    sp = sub.add_parser("gw", help="numbers of rational plane curves")
    sp.add_argument("--dmax", type=_positive, default=6)
    common(sp, ("json", "text", "latex"))
    sp.set_defaults(func=cmd_gw)

    sp = sub.add_parser("eisenstein", help="q-expansions of E2, E4, E6 and Delta")
    sp.add_argument("--order", type=_positive, default=10)
    common(sp)
    sp.set_defaults(func=cmd_eisenstein)

    sp = sub.add_parser("taylor", help="Taylor coefficients of the period map in t")
    sp.add_argument("--nmax", type=_nonnegative, default=2)
    common(sp)
    sp.set_defaults(func=cmd_taylor)

    sp = sub.add_parser("invert", help="lambda_n and Q_n as quasi-modular forms")
    sp.add_argument("--nmax", type=_nonnegative, default=3)
    common(sp, ("json", "text", "latex"))
    sp.set_defaults(func=cmd_invert)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    sp.add_argument("--order", type=_positive, default=20)
    sp.add_argument("--precision", type=_precision, default=128)
    sp.add_argument("--nmax", type=_nonnegative, default=3)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("roundtrip", help="numeric check of the period map at tau")
    sp.add_argument("--tau", type=parse_tau, default=2j)
    sp.add_argument("--precision", type=_precision, default=128)
    sp.add_argument("--method", choices=("series", "hyp2f1"), default="series")
    common(sp)
    sp.set_defaults(func=cmd_roundtrip)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
