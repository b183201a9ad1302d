from fractions import Fraction as F

import pytest

from starmetric.algebra import GSeries, HamiltonianSplit, PhasePoly, parse_poly
from starmetric.expr import to_hamiltonian
from starmetric.intertwiner import (
    LinearDiffOp,
    NoExactSolution,
    build_pde,
    hermitian_counterpart,
    normalize,
    solve_exact,
    solve_metric,
    solve_perturbative,
    star_inverse,
    star_sqrt,
    verify_intertwining,
)
from starmetric.star import STANDARD, STAR, series_mul, star, star_commutator

from tables import C2_SHIFT_ARG, C_TILDE, Q

x, p = PhasePoly.x(), PhasePoly.p()


def _pde(terms):
    L = LinearDiffOp()
    for gpow, a, b, coef in terms:
        L.add_term(gpow, a, b, parse_poly(coef))
    return L


def test_cubic_star_pde(cubic):
    expect = _pde([(1, 0, 0, "4x^3"), (1, 0, 2, "-3x"), (0, 0, 1, "-2x"), (0, 1, 0, "2p")])
    assert build_pde(cubic, STAR) == expect


def test_cubic_standard_pde(cubic):
    expect = _pde([
        (1, 0, 0, "4x^3"), (0, 0, 1, "-2x"), (1, 0, 1, "6i x^2"), (0, 0, 2, "-i"),
        (1, 0, 2, "-6x"), (1, 0, 3, "-2i"), (0, 1, 0, "2p"), (0, 2, 0, "i"),
    ])
    assert build_pde(cubic, STANDARD) == expect


def test_pde_text(cubic):
    assert build_pde(cubic, STAR).format() == "4*g*x^3*eta2 - 2*x*dp*eta2 + 2*p*dx*eta2 - 3*g*x*dp^2*eta2 = 0"


def test_trivial_metric_fails_at_order_one(cubic):
    res = verify_intertwining(cubic, GSeries([1]))
    assert res[1]


def test_particular_solutions(cubic):
    raw = solve_perturbative(cubic, 3)
    assert raw.particular[0] == 1
    for n in (1, 2, 3):
        assert raw.particular[n] == parse_poly(C_TILDE[n])
    assert raw.degrees[:3] == [0, 3, 6]


def test_kernel_generators_commute_with_h0(cubic):
    raw = solve_perturbative(cubic, 4)
    for kernel in raw.kernels:
        assert kernel.generators
        for k in kernel.generators:
            assert not star_commutator(k, cubic.h0, STAR)


def test_c2_is_shifted_by_function_of_h0(cubic_solution):
    u = parse_poly(C2_SHIFT_ARG)
    assert cubic_solution.eta_squared.poly(2) == parse_poly(C_TILDE[2]) + (u**3).scale(F(8, 9)) - u * 4


def test_normalization_is_convention_independent(cubic):
    raw = solve_perturbative(cubic, 6)
    base, _ = normalize(raw)
    h0 = cubic.h0
    shifted, diag = normalize(raw, {2: h0 * 7, 4: h0**2 - 1, 6: h0**3})
    assert shifted == base
    h_base = hermitian_counterpart(cubic, star_sqrt(base))
    assert hermitian_counterpart(cubic, star_sqrt(shifted)) == h_base
    assert all(v["et_residual_zero"] for v in diag["odd_orders"].values())


def test_star_sqrt_and_inverse(cubic_solution):
    eta, inv = cubic_solution.eta, cubic_solution.eta_inverse
    assert series_mul(eta, eta, STAR) == cubic_solution.eta_squared
    assert series_mul(eta, inv, STAR) == GSeries([1], 6)
    q1, q2 = parse_poly(Q[1]), parse_poly(Q[2])
    assert inv.poly(1) == -q1
    assert inv.poly(2) == star(q1, q1, STAR) - q2


def test_trivial_roots():
    one = GSeries([1], 3)
    assert star_sqrt(one) == one
    assert star_inverse(one) == one


def test_hermitian_counterpart_parity(cubic_solution):
    h = cubic_solution.h
    assert h.odd_coefficients_vanish()
    assert h.poly(0) == (p**2 + x**2) / 2


def test_residual_vanishes(cubic, cubic_solution):
    res = verify_intertwining(cubic, cubic_solution.eta_squared)
    assert sorted(res) == list(range(7)) and not any(res.values())


def test_exact_quartic(quartic16):
    sol = solve_exact(quartic16)
    s = p**3 / 48 - p * 2
    assert sol.eta_squared == GSeries([1], None, s)
    assert sol.eta == GSeries([1], None, s / 2)
    assert sol.eta_inverse == GSeries([1], None, -s / 2)
    assert sol.h.poly(0) == p**2 - p / 2 + (x**2 - 1) * 16
    assert sol.h.poly(1) == PhasePoly()
    assert sol.h.poly(2) == (p**2 - 32) ** 2 / 64
    assert sol.h.evaluate(1).body == p**4 / 64 - p / 2 + x**2 * 16
    assert not any(verify_intertwining(quartic16, sol.eta_squared).values())


def test_exact_mode_standard_product(quartic16):
    sol = solve_exact(quartic16, product=STANDARD)
    assert not any(verify_intertwining(quartic16, sol.eta_squared, STANDARD).values())
    assert sol.h.odd_coefficients_vanish()


def test_exact_ansatz_fails_for_cubic(cubic):
    with pytest.raises(NoExactSolution):
        solve_exact(cubic)
    assert solve_metric(cubic, order=2).mode == "perturbative"


def test_harmonic_oscillator_is_trivial():
    H = HamiltonianSplit((p**2 + x**2) / 2, PhasePoly())
    sol = solve_metric(H, order=4, mode="perturbative")
    assert sol.eta_squared == GSeries([1], 4)
    assert sol.h == GSeries([(p**2 + x**2) / 2], 4)


def test_standard_product_cubic(cubic):
    sol = solve_metric(cubic, order=4, mode="perturbative", product=STANDARD)
    assert not any(verify_intertwining(cubic, sol.eta_squared, STANDARD).values())
    assert sol.h.odd_coefficients_vanish()


def test_massive_term_as_printed_shifts_only_the_constant():
    # -m^2(1 + 4igx) and -4m^2(1 + igx) share the g-linear part, so eta agrees;
    # h at g = 0 must equal H at g = 0, which fixes the constant of h
    base = "P^2 - P/2 + a*(X^2-1) + i*G*({X,P^2}/2 - 2*a*X)"
    literal = solve_exact(to_hamiltonian(base + " - m2*(1 + 4*i*G*X)", {"a": 16, "m2": 1}))
    physical = solve_exact(to_hamiltonian(base + " - 4*m2*(1 + i*G*X)", {"a": 16, "m2": 1}))
    assert literal.eta == physical.eta
    assert literal.h.poly(0) - physical.h.poly(0) == PhasePoly.constant(3)
    assert literal.h.poly(2) == physical.h.poly(2)
