"""Perturbative metric for p^2/2 + x^2/2 + i g x^3.

No closed form exists, so eta^2 is built order by order in g.  The kernel
of the zeroth-order operator (functions of h0) is fixed by demanding
eta^2(g) * eta^2(-g) = 1.
"""

import sys
import time

from starmetric.cli import PRESETS
from starmetric.expr import to_hamiltonian
from starmetric.intertwiner import solve_metric
from starmetric.ordering import format_symmetric, symmetric_terms, weyl_quantize

order = int(sys.argv[1]) if len(sys.argv) > 1 else 6
H = to_hamiltonian(PRESETS["cubic"])

t0 = time.perf_counter()
sol = solve_metric(H, order=order, mode="perturbative")
print(f"solved through g^{order} in {time.perf_counter() - t0:.2f} s")

for n in range(1, 3):
    print(f"c_{n} =", sol.eta_squared.poly(n))
    print(f"q_{n} =", sol.eta.poly(n))

print("kernel terms added by the normalization:")
for n, z in sol.diagnostics["kernel_additions"].items():
    print(f"  order {n}: {z}")

for n in range(0, order + 1, 2):
    print(f"h_{n} =", format_symmetric(symmetric_terms(weyl_quantize(sol.h.poly(n)))))
