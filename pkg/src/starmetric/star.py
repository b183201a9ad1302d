"""Moyal-type star products on phase-space symbols.

Two products are provided (hbar = 1):

* ``star_moyal``   (⋆)  the symmetric product, Weyl-ordered operators;
* ``star_standard`` (∗) ``f exp(i <dx ->dp) g``, p-left normal-ordered operators.

Both terminate on polynomial bodies.  For plain polynomials the work is done
monomial-pair by monomial-pair from cached tables, since the table for
``p^a x^b`` against ``p^c x^d`` only depends on the four exponents.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, Tuple, Union

from .algebra import (
    I,
    ExpWeightedPoly,
    GaussianRational,
    GSeries,
    PhasePoly,
    _min_order,
    poly_mul,
)

Symbol = Union[PhasePoly, ExpWeightedPoly]

STAR = "star"
STANDARD = "standard"
POINTWISE = "pointwise"

_PRODUCT_ALIASES = {
    "star": STAR,
    "moyal": STAR,
    "⋆": STAR,
    "standard": STANDARD,
    "∗": STANDARD,
    "*": STANDARD,
    "pointwise": POINTWISE,
}


def product_name(product: str) -> str:
    try:
        return _PRODUCT_ALIASES[product]
    except KeyError:
        raise ValueError(f"unknown product {product!r}; expected star, standard or pointwise") from None


def _falling(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out


@lru_cache(maxsize=None)
def _moyal_table(a: int, b: int, c: int, d: int) -> Tuple[Tuple[int, Fraction], ...]:
    # p^a x^b ⋆ p^c x^d = sum_s i^s r_s p^(a+c-s) x^(b+d-s)
    out: Dict[int, Fraction] = {}
    for u in range(min(b, c) + 1):
        wu = _falling(b, u) * _falling(c, u)
        for t in range(min(a, d) + 1):
            w = wu * _falling(a, t) * _falling(d, t)
            r = Fraction(w * (-1) ** t, 2 ** (u + t) * factorial(u) * factorial(t))
            out[u + t] = out.get(u + t, 0) + r
    return tuple((s, r) for s, r in sorted(out.items()) if r)


@lru_cache(maxsize=None)
def _standard_table(a: int, b: int, c: int, d: int) -> Tuple[Tuple[int, Fraction], ...]:
    # p^a x^b ∗ p^c x^d = sum_s i^s/s! (d_x^s p^a x^b)(d_p^s p^c x^d)
    return tuple(
        (s, Fraction(_falling(b, s) * _falling(c, s), factorial(s)))
        for s in range(min(b, c) + 1)
    )


def _poly_product(f: PhasePoly, g: PhasePoly, table: Callable) -> PhasePoly:
    acc_re: Dict[Tuple[int, int], Fraction] = {}
    acc_im: Dict[Tuple[int, int], Fraction] = {}
    for (b, a), cf in f.items():
        fr, fi = cf.re, cf.im
        for (d, c), cg in g.items():
            gr, gi = cg.re, cg.im
            if fi or gi:
                pr, pi = fr * gr - fi * gi, fr * gi + fi * gr
            else:
                pr, pi = fr * gr, 0
            for s, r in table(a, b, c, d):
                key = (b + d - s, a + c - s)
                q = s & 3
                if q == 0:
                    vr, vi = pr, pi
                elif q == 1:
                    vr, vi = -pi, pr
                elif q == 2:
                    vr, vi = -pr, -pi
                else:
                    vr, vi = pi, -pr
                if vr:
                    acc_re[key] = acc_re.get(key, 0) + vr * r
                if vi:
                    acc_im[key] = acc_im.get(key, 0) + vi * r
    out = {}
    for key in set(acc_re) | set(acc_im):
        v = GaussianRational(acc_re.get(key, 0), acc_im.get(key, 0))
        if v:
            out[key] = v
    return PhasePoly._raw(out)


def _moyal_weight(u: int, t: int) -> GaussianRational:
    # (i/2)^u/u! * (-i/2)^t/t!
    return (I ** (u + t)) * Fraction((-1) ** t, 2 ** (u + t) * factorial(u) * factorial(t))


def _star_moyal_exp(f: ExpWeightedPoly, g: ExpWeightedPoly) -> ExpWeightedPoly:
    out = ExpWeightedPoly(f.exponent + g.exponent, PhasePoly())
    fx, gx = max(f.xdegree, 0), max(g.xdegree, 0)
    for u in range(fx + 1):
        fu = f.diff_x(u)
        for t in range(gx + 1):
            left = fu.diff_p(t)
            right = g.diff_x(t).diff_p(u)
            if not left.body or not right.body:
                continue
            term = ExpWeightedPoly(left.exponent + right.exponent, poly_mul(left.body, right.body))
            out = out + term.scale(_moyal_weight(u, t))
    return out


def _star_standard_exp(f: ExpWeightedPoly, g: ExpWeightedPoly) -> ExpWeightedPoly:
    out = ExpWeightedPoly(f.exponent + g.exponent, PhasePoly())
    for s in range(max(f.xdegree, 0) + 1):
        left, right = f.diff_x(s), g.diff_p(s)
        if not left.body or not right.body:
            continue
        term = ExpWeightedPoly(left.exponent + right.exponent, poly_mul(left.body, right.body))
        out = out + term.scale(I**s * Fraction(1, factorial(s)))
    return out


def _dispatch(f, g, poly_table, exp_rule):
    if isinstance(f, PhasePoly) and isinstance(g, PhasePoly):
        return _poly_product(f, g, poly_table)
    f, g = ExpWeightedPoly.lift(f), ExpWeightedPoly.lift(g)
    if not f.exponent and not g.exponent:
        return ExpWeightedPoly(PhasePoly(), _poly_product(f.body, g.body, poly_table))
    return exp_rule(f, g)


def star_moyal(f: Symbol, g: Symbol) -> Symbol:
    """Symmetric Moyal product ``f ⋆ g``."""
    return _dispatch(f, g, _moyal_table, _star_moyal_exp)


def star_standard(f: Symbol, g: Symbol) -> Symbol:
    """Standard-ordered product ``f ∗ g = sum_s i^s/s! d_x^s f d_p^s g``."""
    return _dispatch(f, g, _standard_table, _star_standard_exp)


def star(f: Symbol, g: Symbol, product: str = STAR) -> Symbol:
    product = product_name(product)
    if product == STAR:
        return star_moyal(f, g)
    if product == STANDARD:
        return star_standard(f, g)
    if isinstance(f, PhasePoly) and isinstance(g, PhasePoly):
        return poly_mul(f, g)
    return ExpWeightedPoly.lift(f) * ExpWeightedPoly.lift(g)


def star_commutator(f: Symbol, g: Symbol, product: str = STAR) -> Symbol:
    return star(f, g, product) - star(g, f, product)


def star_anticommutator(f: Symbol, g: Symbol, product: str = STAR) -> Symbol:
    return star(f, g, product) + star(g, f, product)


# ---------------------------------------------------------------------------
# series


def _cauchy(a: GSeries, b: GSeries, mul) -> GSeries:
    order = _min_order(a.truncation_order, b.truncation_order)
    if order is None:
        top = len(a.coeffs) + len(b.coeffs) - 2
    else:
        top = order
    coeffs = []
    for n in range(top + 1):
        acc = ExpWeightedPoly.lift(PhasePoly())
        for k in range(max(0, n - len(b.coeffs) + 1), min(n, len(a.coeffs) - 1) + 1):
            x, y = a.coeffs[k], b.coeffs[n - k]
            if x and y:
                acc = acc + mul(x, y)
        coeffs.append(acc)
    return GSeries(coeffs, order, a.g_exponent + b.g_exponent)


def _series_dx(s: GSeries, k: int = 1) -> GSeries:
    return GSeries([c.diff_x(k) for c in s.coeffs], s.truncation_order, s.g_exponent)


def _series_dp(s: GSeries, k: int = 1) -> GSeries:
    # d/dp of exp(g*sigma) sum g^n B_n: coefficient n gains sigma' B_(n-1)
    ds = s.g_exponent.diff_p()
    for _ in range(k):
        coeffs = list(s.coeffs)
        shifted = [c.diff_p() for c in coeffs] + [ExpWeightedPoly.lift(PhasePoly())]
        if ds:
            for n, c in enumerate(coeffs):
                if c:
                    shifted[n + 1] = shifted[n + 1] + c * ExpWeightedPoly.lift(ds)
        s = GSeries(shifted, s.truncation_order, s.g_exponent)
    return s


def _series_xdegree(s: GSeries) -> int:
    return max((c.xdegree for c in s.coeffs), default=-1)


def _series_star_weighted(a: GSeries, b: GSeries, product: str) -> GSeries:
    pointwise = lambda x, y: x * y
    order = _min_order(a.truncation_order, b.truncation_order)
    out = GSeries([], order, a.g_exponent + b.g_exponent)
    ax, bx = max(_series_xdegree(a), 0), max(_series_xdegree(b), 0)
    if product == STAR:
        for u in range(ax + 1):
            au = _series_dx(a, u)
            for t in range(bx + 1):
                left = _series_dp(au, t)
                right = _series_dp(_series_dx(b, t), u)
                out = out + _cauchy(left, right, pointwise).scale(_moyal_weight(u, t))
    else:
        for s in range(ax + 1):
            left = _series_dx(a, s)
            right = _series_dp(b, s)
            out = out + _cauchy(left, right, pointwise).scale(I**s * Fraction(1, factorial(s)))
    return out


def series_mul(a: GSeries, b: GSeries, product: str = STAR) -> GSeries:
    """Cauchy product in powers of g, coefficients combined by ``product``.

    Truncates at the smaller truncation order.  Series carrying an
    exponential weight ``exp(g*sigma)`` are multiplied by expanding the
    bidifferential operator at the series level, so derivatives hitting the
    weight feed the next power of g.
    """
    product = product_name(product)
    if product == POINTWISE:
        return _cauchy(a, b, lambda x, y: x * y)
    if a.g_exponent or b.g_exponent:
        return _series_star_weighted(a, b, product)
    mul = star_moyal if product == STAR else star_standard
    return _cauchy(a, b, mul)

