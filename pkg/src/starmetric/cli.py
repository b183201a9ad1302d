"""Command-line front end.

    starmetric pde cubic
    starmetric eta2 quartic --mode exact --param a=16
    starmetric hermitian "P^2/2 + X^2/2 + i*G*X^3" --order 6 --format json
    starmetric spectrum cubic --g 0.05 --dim 200

Exit codes: 0 success, 1 usage, 2 parse error, 3 solver failure,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import re
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .algebra import GSeries, PhasePoly, format_poly
from .expr import ExprSyntaxError, LoweringError, to_hamiltonian
from .intertwiner import (
    MetricSolution,
    NoExactSolution,
    NormalizationObstruction,
    OddOrderResidual,
    Unsolvable,
    build_pde,
    solve_metric,
    verify_intertwining,
)
from .ordering import (
    format_symmetric,
    standard_quantize,
    symmetric_terms,
    weyl_quantize,
)
from .serialize import (
    latex_series,
    latex_symmetric,
    pde_to_record,
    series_to_record,
)
from .specverify import DimensionTooSmall, isospectral_check, truncated_symbol
from .star import STANDARD, STAR, series_mul, star

log = logging.getLogger("starmetric")

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3, 4

PRESETS = {
    "cubic": "P^2/2 + X^2/2 + i*G*X^3",
    "quartic": "P^2 - P/2 + a*(X^2-1) + i*G*({X,P^2}/2 - 2*a*X)",
    # mass term m^2 z^2 in the transformed variable, z^2 = -4(1 + i x)
    "massive": "P^2 - P/2 + a*(X^2-1) + i*G*({X,P^2}/2 - 2*a*X) - 4*m^2*(1 + i*G*X)",
}

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _param(text: str):
    name, sep, value = text.partition("=")
    if not sep or not name.isidentifier():
        raise argparse.ArgumentTypeError(f"expected name=rational, got {text!r}")
    value = value.strip()
    if not _RATIONAL.match(value):
        raise argparse.ArgumentTypeError(f"parameter values must be exact rationals p/q, got {value!r}")
    return name, Fraction(value)


def _number(text: str) -> Fraction:
    # decimals are fine here: --g only feeds the floating-point spectrum check
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("hamiltonian", nargs="?", default="cubic", help=f"expression, or one of {', '.join(PRESETS)}")
    common.add_argument("--param", action="append", type=_param, default=[], metavar="NAME=P/Q")
    common.add_argument("--input-mode", choices=["operator", "symbol"], default="operator")
    common.add_argument("--product", choices=["star", "standard"], default="star")
    common.add_argument("--order", type=int, default=6)
    common.add_argument("--mode", choices=["auto", "exact", "perturbative"], default="auto")
    common.add_argument("--format", choices=["text", "json", "latex"], default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="starmetric", description="Metric, similarity map and Hermitian counterpart of non-Hermitian Hamiltonians.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    pde = sub.add_parser("pde", parents=[common], help="intertwining differential equation")
    pde.add_argument("--both", action="store_true", help="print the equation for both products")
    sub.add_parser("eta2", parents=[common], help="metric symbol")
    sub.add_parser("eta", parents=[common], help="similarity transformation")
    sub.add_parser("hermitian", parents=[common], help="Hermitian counterpart h")
    sub.add_parser("verify", parents=[common], help="check the intertwining relation and normalization")
    spec = sub.add_parser("spectrum", parents=[common], help="compare spectra of H and h numerically")
    spec.add_argument("--g", type=_number, required=True)
    spec.add_argument("--dim", type=int, default=200)
    props = sub.add_parser("props", parents=[common], help="randomized quantization homomorphism checks")
    props.add_argument("--seed", type=int, default=0)
    props.add_argument("--count", type=int, default=50)
    props.add_argument("--degree", type=int, default=4)
    return p


# ---------------------------------------------------------------------------
# text helpers


def operator_style(f: PhasePoly, gpow: int = 0) -> str:
    """``G*P^3/48 - 2*G*P`` style text for a real symbol times ``G^gpow``."""
    if not f.is_real():
        return format_poly(f)
    if not f:
        return "0"
    out = []
    for j, (m, c) in enumerate(f.sorted_terms()):
        v = c.re
        sign = ("-" if v < 0 else "") if j == 0 else (" - " if v < 0 else " + ")
        v = abs(v)
        factors = []
        if gpow:
            factors.append("G" if gpow == 1 else f"G^{gpow}")
        if m.pdeg:
            factors.append("P" if m.pdeg == 1 else f"P^{m.pdeg}")
        if m.xdeg:
            factors.append("X" if m.xdeg == 1 else f"X^{m.xdeg}")
        if v.numerator != 1 or not factors:
            factors.insert(0, str(v.numerator))
        text = "*".join(factors)
        if v.denominator != 1:
            text += f"/{v.denominator}"
        out.append(sign + text)
    return "".join(out)


def _quantize(f: PhasePoly, product: str):
    return weyl_quantize(f) if product == STAR else standard_quantize(f)


def _series_text(s: GSeries, name: str) -> List[str]:
    lines = []
    if s.g_exponent:
        lines.append(f"{name} = exp({operator_style(s.g_exponent, 1)}) * sum_n g^n {name}_n")
    for n, c in enumerate(s.coeffs):
        if c:
            lines.append(f"{name}_{n} = {c}")
    return lines


# ---------------------------------------------------------------------------
# commands


def _solve(args, H) -> MetricSolution:
    return solve_metric(H, order=args.order, mode=args.mode, product=args.product)


def _base_record(args, H) -> dict:
    return {
        "command": args.command,
        "input": args.source,
        "parameters": {k: f"{v.numerator}/{v.denominator}" for k, v in sorted(H.parameters.items())},
        "series": [],
        "diagnostics": {},
    }


def cmd_pde(args, H, out) -> int:
    products = [STAR, STANDARD] if args.both else [args.product]
    eqs = {p: build_pde(H, p) for p in products}
    if args.format == "json":
        rec = _base_record(args, H)
        rec["pde"] = {p: pde_to_record(L) for p, L in eqs.items()}
        out.append(json.dumps(rec, indent=2))
    else:
        for p, L in eqs.items():
            prefix = f"{p}: " if len(eqs) > 1 else ""
            out.append(prefix + L.format())
    return EXIT_OK


def _emit_series(args, H, sol: MetricSolution, s: GSeries, name: str, out, symmetric=False) -> None:
    sym = None
    if symmetric:
        sym = {n: symmetric_terms(_quantize(c.body, sol.product)) for n, c in enumerate(s.coeffs) if c}
    if args.format == "json":
        rec = _base_record(args, H)
        rec["product"] = sol.product
        rec["mode"] = sol.mode
        rec["series"] = [dict(name=name, **series_to_record(s, sym))]
        rec["diagnostics"] = _jsonable(sol.diagnostics)
        out.append(json.dumps(rec, indent=2))
    elif args.format == "latex":
        if sym is None:
            out.append(latex_series(s, name))
        else:
            out.append(" \\\\\n".join(f"{name}_{{{n}}} = {latex_symmetric(t)}" for n, t in sym.items()))
    else:
        out.append(f"# {name}: {sol.mode}, {sol.product} product")
        if sym is None:
            out.extend(_series_text(s, name))
        else:
            out.extend(f"{name}_{n} = {format_symmetric(t)}" for n, t in sym.items())


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    return str(obj)


def cmd_eta2(args, H, out) -> int:
    sol = _solve(args, H)
    _emit_series(args, H, sol, sol.eta_squared, "eta2", out)
    return EXIT_OK


def cmd_eta(args, H, out) -> int:
    sol = _solve(args, H)
    _emit_series(args, H, sol, sol.eta, "eta", out)
    return EXIT_OK


def cmd_hermitian(args, H, out) -> int:
    sol = _solve(args, H)
    _emit_series(args, H, sol, sol.h, "h", out, symmetric=True)
    return EXIT_OK


def run_checks(H, sol: MetricSolution) -> Dict[str, bool]:
    p = sol.product
    residual = verify_intertwining(H, sol.eta_squared, p)
    one = series_mul(sol.eta_squared, sol.eta_squared.reflect(), p)
    unit = GSeries([1], one.truncation_order)
    return {
        "intertwining": not any(residual.values()),
        "metric_times_reflection_is_one": one == unit,
        "inverse_is_reflection": sol.eta_inverse == sol.eta.reflect(),
        "odd_orders_of_h_vanish": sol.h.odd_coefficients_vanish(),
    }


def cmd_verify(args, H, out) -> int:
    sol = _solve(args, H)
    checks = run_checks(H, sol)
    if args.format == "json":
        rec = _base_record(args, H)
        rec["diagnostics"] = dict(checks=checks, **_jsonable(sol.diagnostics))
        out.append(json.dumps(rec, indent=2))
    else:
        for k, v in checks.items():
            out.append(f"{'ok  ' if v else 'FAIL'} {k}")
    return EXIT_OK if all(checks.values()) else EXIT_VERIFY


def cmd_spectrum(args, H, out) -> int:
    sol = _solve(args, H)
    g = args.g
    order = sol.h.last_index if sol.mode == "exact" else args.order
    h_sym = truncated_symbol(sol.h, g, order)
    # H is always given by its Weyl symbol; h is in the solver's ordering
    H_op = weyl_quantize(H.symbol.evaluate(g).body)
    report = isospectral_check(H_op, _quantize(h_sym, sol.product), args.dim, g=g)
    if args.format == "json":
        rec = _base_record(args, H)
        rec["spectrum"] = report.as_record()
        out.append(json.dumps(rec, indent=2))
    else:
        out.append(report.to_text())
    return EXIT_OK


def _random_symbol(rng: random.Random, degree: int) -> PhasePoly:
    terms = {}
    for _ in range(rng.randint(1, 5)):
        d = rng.randint(0, degree)
        x = rng.randint(0, d)
        terms[(x, d - x)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return PhasePoly(terms)


def cmd_props(args, H, out) -> int:
    rng = random.Random(args.seed)
    failures = 0
    for _ in range(args.count):
        f, g = _random_symbol(rng, args.degree), _random_symbol(rng, args.degree)
        for p in (STAR, STANDARD):
            if _quantize(star(f, g, p), p) != _quantize(f, p) * _quantize(g, p):
                failures += 1
                out.append(f"FAIL {p}: f = {f}, g = {g}")
    out.append(f"{args.count} pairs, seed {args.seed}, {failures} failures")
    return EXIT_OK if not failures else EXIT_VERIFY


COMMANDS = {
    "pde": cmd_pde,
    "eta2": cmd_eta2,
    "eta": cmd_eta,
    "hermitian": cmd_hermitian,
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "props": cmd_props,
}


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    args.source = PRESETS.get(args.hamiltonian, args.hamiltonian)
    params = dict(args.param)
    out: List[str] = []
    try:
        H = to_hamiltonian(args.source, params, args.input_mode)
        code = COMMANDS[args.command](args, H, out)
    except ExprSyntaxError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except LoweringError as exc:
        print(f"input error: {exc}", file=stderr)
        return EXIT_PARSE
    except (NoExactSolution, Unsolvable, NormalizationObstruction) as exc:
        print(f"solver failure: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_SOLVER
    except OddOrderResidual as exc:
        print(f"verification failure: {exc}", file=stderr)
        return EXIT_VERIFY
    except DimensionTooSmall as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    for line in out:
        print(line, file=stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
