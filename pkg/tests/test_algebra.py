from fractions import Fraction as F

import pytest

from starmetric.algebra import (
    I,
    ExpWeightedPoly,
    GaussianRational,
    GSeries,
    HamiltonianSplit,
    PhasePoly,
    conjugate_symbol,
    diff_p,
    diff_x,
    format_poly,
    parse_poly,
)

x, p = PhasePoly.x(), PhasePoly.p()


def test_gaussian_rational_field_ops():
    a = GaussianRational(F(1, 2), 3)
    b = GaussianRational(-2, F(1, 3))
    assert (a * b) / b == a
    assert a * a.inverse() == 1
    assert a.conjugate() == GaussianRational(F(1, 2), -3)
    assert I * I == -1
    with pytest.raises(ZeroDivisionError):
        GaussianRational(0).inverse()


def test_gaussian_rational_str():
    assert str(GaussianRational(F(-1, 2))) == "-1/2"
    assert str(I) == "i"


def test_poly_products():
    assert (x + p) * (x - p) == x**2 - p**2
    assert PhasePoly() * (x**3 + p) == PhasePoly()
    prod = x**2 * p**2
    assert prod == PhasePoly.monomial(2, 2) and prod[(2, 2)] == 1


def test_zero_coefficients_are_dropped():
    f = PhasePoly({(1, 0): 1, (0, 1): 0})
    assert len(f) == 1
    assert (x - x).is_zero()


def test_derivatives():
    assert diff_p(x**2 * p**3) == (x**2 * p**2).scale(3)
    assert diff_x(p**4) == PhasePoly()
    g = F(1, 7)
    w = ExpWeightedPoly(p**3 * g, x**2)
    assert diff_x(w) == ExpWeightedPoly(p**3 * g, x * 2)
    w = ExpWeightedPoly(p * (-2 * g), p)
    assert diff_p(w) == ExpWeightedPoly(p * (-2 * g), 1 - p * (2 * g))


def test_exponent_must_be_x_free():
    with pytest.raises(ValueError):
        ExpWeightedPoly(x, PhasePoly.constant(1))


def test_conjugation():
    assert conjugate_symbol((x**3).scale(I)) == (x**3).scale(-I)
    assert conjugate_symbol(p**2 + x**2) == p**2 + x**2
    H = HamiltonianSplit((p**2 + x**2) / 2, x**3)
    assert H.adjoint_symbol == GSeries([(p**2 + x**2) / 2, (x**3).scale(-I)])


def test_hamiltonian_split_needs_real_parts():
    with pytest.raises(ValueError):
        HamiltonianSplit(x.scale(I), PhasePoly())


def test_formatting_is_canonical():
    f = parse_poly("x^2 - 2p x + 3p^2/4 + i")
    assert format_poly(f) == "3/4*p^2 - 2*p*x + x^2 + i"
    assert parse_poly(format_poly(f)) == f


def test_series_basics():
    s = GSeries([1, p, x**2], truncation_order=4)
    assert s.last_index == 4
    assert s.poly(3) == PhasePoly()
    assert s.reflect().poly(1) == -p
    assert GSeries([1, 0, 0]) == GSeries([1])
    assert s.truncate(1) == GSeries([1, p], 1)
    assert s.evaluate(F(1, 2)).body == 1 + p / 2 + x**2 / 4


def test_series_odd_coefficients():
    assert GSeries([x, 0, p]).odd_coefficients_vanish()
    assert not GSeries([x, p]).odd_coefficients_vanish()
