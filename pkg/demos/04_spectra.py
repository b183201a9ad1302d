"""H and h have the same spectrum.

For the cubic the counterpart is truncated at g^6, so the gap should shrink
like g^8.  For the quartic h is exact and the gap is limited by the basis.
"""

from fractions import Fraction

from starmetric.cli import PRESETS
from starmetric.expr import to_hamiltonian
from starmetric.intertwiner import solve_exact, solve_metric
from starmetric.ordering import weyl_quantize
from starmetric.specverify import convergence_exponent, isospectral_check, truncated_symbol

H = to_hamiltonian(PRESETS["cubic"])
sol = solve_metric(H, order=6, mode="perturbative")
reports = []
for g in (Fraction(1, 20), Fraction(1, 40)):
    H_op = weyl_quantize(H.symbol.evaluate(g).body)
    h_op = weyl_quantize(truncated_symbol(sol.h, g, 6))
    r = isospectral_check(H_op, h_op, 200, g=g)
    print(r.to_text())
    reports.append(r)
print(f"fitted exponent: {convergence_exponent(*reports):.2f}")

Q = to_hamiltonian(PRESETS["quartic"], {"a": 16})
exact = solve_exact(Q)
r = isospectral_check(weyl_quantize(Q.symbol.evaluate(1).body), weyl_quantize(truncated_symbol(exact.h, 1, 2)), 400, g=Fraction(1))
print(r.to_text())
