"""Star products versus operator products.

Both products reproduce the canonical commutator; they differ in which
ordering of operators they encode.
"""

from starmetric.algebra import PhasePoly
from starmetric.ordering import op_commutator, OperatorPoly, symmetric_product, weyl_quantize
from starmetric.star import STANDARD, STAR, star

x, p = PhasePoly.x(), PhasePoly.p()
X, P = OperatorPoly.X(), OperatorPoly.P()

for name in (STAR, STANDARD):
    c = star(x**2, p**2, name) - star(p**2, x**2, name)
    print(f"{name:>8}: x^2 . p^2 - p^2 . x^2 = {c}")

print("operators: [X^2, P^2] =", op_commutator(X**2, P**2))

# Weyl quantization sends p^m x^n to the symmetrised word S(m, n)
for m, n in [(1, 1), (2, 2), (3, 1)]:
    print(f"S({m},{n}) =", symmetric_product(m, n))

# the Moyal product is the Weyl image of the operator product
f, g = x**3 + p, x * p**2
print(weyl_quantize(star(f, g, STAR)) == weyl_quantize(f) * weyl_quantize(g))
