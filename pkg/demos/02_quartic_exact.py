"""The -x^4 potential in its transformed form admits a closed-form metric.

The exponential ansatz eta^2 = exp(g s(p)) turns the intertwining equation
into a linear system for the coefficients of s.
"""

import sys
from fractions import Fraction

from starmetric.cli import PRESETS, operator_style
from starmetric.expr import to_hamiltonian
from starmetric.intertwiner import build_pde, solve_exact

alpha = Fraction(sys.argv[1]) if len(sys.argv) > 1 else Fraction(16)
H = to_hamiltonian(PRESETS["quartic"], {"a": alpha})
print("H:", H)
print("PDE:", build_pde(H).format())

sol = solve_exact(H)
print("eta^2 = exp(%s)" % operator_style(sol.eta_squared.g_exponent, 1))
print("eta   = exp(%s)" % operator_style(sol.eta.g_exponent, 1))
for n, c in enumerate(sol.h.coeffs):
    if c:
        print(f"h_{n} =", c)
print("h at g = 1:", sol.h.evaluate(1))
