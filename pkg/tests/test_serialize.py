import json

from starmetric.algebra import I, GSeries, PhasePoly
from starmetric.intertwiner import build_pde
from starmetric.serialize import (
    latex_poly,
    pde_from_record,
    pde_to_record,
    series_from_record,
    series_to_record,
)

x, p = PhasePoly.x(), PhasePoly.p()


def test_series_roundtrip(cubic_solution):
    for s in (cubic_solution.eta_squared, cubic_solution.h, GSeries([1], None, p**3 / 48 - p * 2)):
        rec = json.loads(json.dumps(series_to_record(s)))
        assert series_from_record(rec) == s


def test_rationals_are_strings():
    rec = series_to_record(GSeries([x.scale(I) / 3]))
    term = rec["coefficients"][0]["terms"][0]
    assert (term["re"], term["im"]) == ("0/1", "1/3")


def test_pde_roundtrip(cubic):
    L = build_pde(cubic, "standard")
    assert pde_from_record(json.loads(json.dumps(pde_to_record(L)))) == L


def test_latex():
    assert latex_poly(p**2 / 2 - x.scale(I) + 1) == r"\frac{1}{2}p^{2} - i\,x + 1"
