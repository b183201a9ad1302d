"""JSON records and LaTeX for exact symbols and g-series.

Rationals are written as ``"p/q"`` strings so that records round-trip
without loss.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional

from .algebra import ExpWeightedPoly, GaussianRational, GSeries, PhasePoly
from .intertwiner import LinearDiffOp
from .ordering import SymmetricTerm


def rational_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def poly_to_terms(f: PhasePoly) -> List[dict]:
    return [
        {"xdeg": m.xdeg, "pdeg": m.pdeg, "re": rational_str(c.re), "im": rational_str(c.im)}
        for m, c in f.sorted_terms()
    ]


def poly_from_terms(terms: List[dict]) -> PhasePoly:
    return PhasePoly({(t["xdeg"], t["pdeg"]): GaussianRational(Fraction(t["re"]), Fraction(t["im"])) for t in terms})


def series_to_record(s: GSeries, symmetric: Optional[Dict[int, List[SymmetricTerm]]] = None) -> dict:
    entries = []
    for n, c in enumerate(s.coeffs):
        e = {"power": n, "terms": poly_to_terms(c.body), "exponent_terms": poly_to_terms(c.exponent)}
        if symmetric is not None and n in symmetric:
            e["symmetric"] = [
                {"m": t.m, "n": t.n, "re": rational_str(t.coefficient.re), "im": rational_str(t.coefficient.im)}
                for t in symmetric[n]
            ]
        entries.append(e)
    return {
        "truncation_order": s.truncation_order,
        "g_exponent_terms": poly_to_terms(s.g_exponent),
        "coefficients": entries,
    }


def series_from_record(rec: dict) -> GSeries:
    coeffs = [
        ExpWeightedPoly(poly_from_terms(e.get("exponent_terms", [])), poly_from_terms(e["terms"]))
        for e in sorted(rec["coefficients"], key=lambda e: e["power"])
    ]
    return GSeries(coeffs, rec.get("truncation_order"), poly_from_terms(rec.get("g_exponent_terms", [])))


def pde_to_record(L: LinearDiffOp) -> List[dict]:
    return [
        {"gpow": k, "dx": a, "dp": b, "coefficient": poly_to_terms(c)}
        for (k, a, b), c in sorted(L.terms.items())
    ]


def pde_from_record(rec: List[dict]) -> LinearDiffOp:
    L = LinearDiffOp()
    for t in rec:
        L.add_term(t["gpow"], t["dx"], t["dp"], poly_from_terms(t["coefficient"]))
    return L


# ---------------------------------------------------------------------------
# LaTeX


def _latex_rational(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return rf"\frac{{{v.numerator}}}{{{v.denominator}}}"


def _latex_coeff(c: GaussianRational, first: bool, has_monomial: bool) -> str:
    if c.re and c.im:
        re, im = _latex_rational(c.re), _latex_rational(abs(c.im))
        body = rf"\left({re} {'+' if c.im > 0 else '-'} {im} i\right)"
        return ("" if first else " + ") + body
    value = c.re if c.re else c.im
    neg = value < 0
    mag = -value if neg else value
    lead = ("-" if neg else "") if first else (" - " if neg else " + ")
    text = "" if (mag == 1 and has_monomial) else _latex_rational(mag)
    if c.im:
        text = "i" if mag == 1 else text + " i"
        if has_monomial:
            text += r"\,"
    return lead + text


def _latex_mono(parts) -> str:
    out = []
    for name, k in parts:
        if k == 1:
            out.append(name)
        elif k:
            out.append(f"{name}^{{{k}}}")
    return " ".join(out)


def latex_poly(f: PhasePoly) -> str:
    if not f:
        return "0"
    out = []
    for j, (m, c) in enumerate(f.sorted_terms()):
        ms = _latex_mono([("p", m.pdeg), ("x", m.xdeg)])
        out.append(_latex_coeff(c, j == 0, bool(ms)) + ms)
    return "".join(out)


def latex_symmetric(terms: List[SymmetricTerm]) -> str:
    out = []
    for j, t in enumerate(terms):
        if t.m and t.n:
            lab = f"S_{{{t.m},{t.n}}}"
        else:
            lab = _latex_mono([(r"\hat p", t.m), (r"\hat x", t.n)])
        out.append(_latex_coeff(t.coefficient, j == 0, bool(lab)) + lab)
    return "".join(out) or "0"


def latex_series(s: GSeries, name: str) -> str:
    lines = []
    if s.g_exponent:
        lines.append(rf"{name} = \exp\left(g\left({latex_poly(s.g_exponent)}\right)\right) \sum_n g^n {name}_n")
    for n, c in enumerate(s.coeffs):
        if not c:
            continue
        body = latex_poly(c.body)
        if c.exponent:
            body = rf"e^{{{latex_poly(c.exponent)}}}\left({body}\right)"
        lines.append(f"{name}_{{{n}}} = {body}")
    return " \\\\\n".join(lines)
