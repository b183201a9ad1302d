"""Operator polynomials in one canonical pair and the symbol <-> operator maps.

Operators are stored in p-left normal order, ``sum c * P^m X^n``, and
products are re-normalised with ``[X, P] = i``.  Two quantization maps are
available:

* ``standard_quantize``: ``p^m x^n -> P^m X^n`` (inverse of the ∗-product picture)
* ``weyl_quantize``:     ``p^m x^n -> S(m, n)``, the totally symmetric word sum
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .algebra import (
    I,
    ZERO,
    GaussianRational,
    Number,
    PhasePoly,
    _coeff_prefix,
    _falling,
)


class OperatorPoly:
    """Normal-ordered noncommutative polynomial ``sum c[m, n] P^m X^n``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Tuple[int, int], Number]] = None):
        clean = {}
        for (m, n), c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                if m < 0 or n < 0:
                    raise ValueError("negative operator power")
                clean[(int(m), int(n))] = c
        self._terms: Dict[Tuple[int, int], GaussianRational] = clean

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def constant(cls, c: Number) -> "OperatorPoly":
        return cls({(0, 0): c})

    @classmethod
    def X(cls) -> "OperatorPoly":
        return cls({(0, 1): 1})

    @classmethod
    def P(cls) -> "OperatorPoly":
        return cls({(1, 0): 1})

    def items(self):
        return self._terms.items()

    @property
    def terms(self):
        return dict(self._terms)

    def __getitem__(self, key) -> GaussianRational:
        return self._terms.get(tuple(key), ZERO)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self) -> int:
        return max((m + n for m, n in self._terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = OperatorPoly.constant(other)
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = OperatorPoly.constant(other)
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, ZERO) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return OperatorPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return OperatorPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if isinstance(other, OperatorPoly):
            return op_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        return self.scale(GaussianRational.coerce(other).inverse())

    def __pow__(self, k: int):
        out = OperatorPoly.constant(1)
        for _ in range(k):
            out = op_mul(out, self)
        return out

    def scale(self, c: Number) -> "OperatorPoly":
        c = GaussianRational.coerce(c)
        if not c:
            return OperatorPoly()
        return OperatorPoly._raw({k: v * c for k, v in self._terms.items()})

    def __repr__(self):
        return f"OperatorPoly({format_operator(self)!r})"

    def __str__(self):
        return format_operator(self)


def format_operator(a: OperatorPoly) -> str:
    if not a:
        return "0"
    keys = sorted(a._terms, key=lambda k: (k[0] + k[1], k[0]), reverse=True)
    out = []
    for j, (m, n) in enumerate(keys):
        parts = []
        if m:
            parts.append("P" if m == 1 else f"P^{m}")
        if n:
            parts.append("X" if n == 1 else f"X^{n}")
        ms = "*".join(parts)
        out.append(_coeff_prefix(a._terms[(m, n)], j == 0, bool(ms)) + ms)
    return "".join(out)


@lru_cache(maxsize=None)
def _swap_table(b: int, c: int) -> Tuple[Tuple[int, GaussianRational], ...]:
    # X^b P^c = sum_k C(b,k) c!/(c-k)! i^k P^(c-k) X^(b-k), from [X, f(P)] = i f'(P)
    return tuple((k, I**k * (comb(b, k) * _falling(c, k))) for k in range(min(b, c) + 1))


def op_mul(a: OperatorPoly, b: OperatorPoly) -> OperatorPoly:
    """Product of normal-ordered operators, re-normalised exactly."""
    out: Dict[Tuple[int, int], GaussianRational] = {}
    for (m1, n1), c1 in a._terms.items():
        for (m2, n2), c2 in b._terms.items():
            c12 = c1 * c2
            for k, w in _swap_table(n1, m2):
                key = (m1 + m2 - k, n1 + n2 - k)
                out[key] = out.get(key, ZERO) + c12 * w
    return OperatorPoly._raw({k: v for k, v in out.items() if v})


def op_commutator(a: OperatorPoly, b: OperatorPoly) -> OperatorPoly:
    return op_mul(a, b) - op_mul(b, a)


def op_adjoint(a: OperatorPoly) -> OperatorPoly:
    """Hermitian adjoint: ``(c P^m X^n)^† = conj(c) X^n P^m``, re-ordered."""
    out: Dict[Tuple[int, int], GaussianRational] = {}
    for (m, n), c in a._terms.items():
        cc = c.conjugate()
        for k, w in _swap_table(n, m):
            key = (m - k, n - k)
            out[key] = out.get(key, ZERO) + cc * w
    return OperatorPoly._raw({k: v for k, v in out.items() if v})


def hermitian_check(a: OperatorPoly) -> bool:
    return op_adjoint(a) == a


# ---------------------------------------------------------------------------
# quantization maps


def standard_quantize(f: PhasePoly) -> OperatorPoly:
    """``p^m x^n -> P^m X^n``."""
    return OperatorPoly._raw({(p, x): c for (x, p), c in f.items()})


def standard_symbol(a: OperatorPoly) -> PhasePoly:
    """Inverse of :func:`standard_quantize`."""
    return PhasePoly._raw({(n, m): c for (m, n), c in a._terms.items()})


@lru_cache(maxsize=None)
def symmetric_product(m: int, n: int) -> OperatorPoly:
    """``S(m, n)``, the symmetrised product of m P's and n X's, normal-ordered.

    Built by the recurrence ``S(m, n+1) = (X S(m, n) + S(m, n) X) / 2``.
    """
    if n == 0:
        return OperatorPoly({(m, 0): 1})
    prev = symmetric_product(m, n - 1)
    x = OperatorPoly.X()
    return (op_mul(x, prev) + op_mul(prev, x)).scale(Fraction(1, 2))


def weyl_quantize(f: PhasePoly) -> OperatorPoly:
    """Replace every monomial ``p^m x^n`` by ``S(m, n)``."""
    out = OperatorPoly()
    for (x, p), c in f.items():
        out = out + symmetric_product(p, x).scale(c)
    return out


def weyl_symbol(a: OperatorPoly) -> PhasePoly:
    """Inverse of :func:`weyl_quantize` by back-substitution from the top degree."""
    rest = a
    terms = {}
    while rest:
        m, n = max(rest._terms, key=lambda k: (k[0] + k[1], k[0]))
        c = rest._terms[(m, n)]
        terms[(n, m)] = c
        rest = rest - symmetric_product(m, n).scale(c)
    return PhasePoly(terms)


def weyl_to_standard(f: PhasePoly) -> PhasePoly:
    """Standard-ordering symbol of the operator whose Weyl symbol is ``f``."""
    return standard_symbol(weyl_quantize(f))


def standard_to_weyl(f: PhasePoly) -> PhasePoly:
    return weyl_symbol(standard_quantize(f))


# ---------------------------------------------------------------------------
# symmetric basis


@dataclass(frozen=True)
class SymmetricTerm:
    m: int
    n: int
    coefficient: GaussianRational

    def expand(self) -> OperatorPoly:
        return symmetric_product(self.m, self.n).scale(self.coefficient)

    def label(self) -> str:
        if self.m == 0 and self.n == 0:
            return ""
        if self.n == 0:
            return "P" if self.m == 1 else f"P^{self.m}"
        if self.m == 0:
            return "X" if self.n == 1 else f"X^{self.n}"
        return f"S({self.m},{self.n})"


def symmetric_terms(a: OperatorPoly) -> List[SymmetricTerm]:
    """``a`` written as ``sum c S(m, n)``, highest graded term first."""
    f = weyl_symbol(a)
    return [SymmetricTerm(mono.pdeg, mono.xdeg, c) for mono, c in f.sorted_terms()]


def format_symmetric(terms: Iterable[SymmetricTerm]) -> str:
    out = []
    for j, t in enumerate(terms):
        lab = t.label()
        out.append(_coeff_prefix(t.coefficient, j == 0, bool(lab)) + lab)
    return "".join(out) or "0"


# ---------------------------------------------------------------------------
# brute-force references (small degrees only)


@lru_cache(maxsize=None)
def normal_order_word(word: str) -> OperatorPoly:
    """Normal-order a word over {'p', 'x'} by repeatedly using ``xp = px + i``."""
    j = word.find("xp")
    if j < 0:
        return OperatorPoly({(word.count("p"), word.count("x")): 1})
    swapped = word[:j] + "px" + word[j + 2 :]
    dropped = word[:j] + word[j + 2 :]
    return normal_order_word(swapped) + normal_order_word(dropped).scale(I)


def symmetric_product_bruteforce(m: int, n: int) -> OperatorPoly:
    """``m! n! / (m+n)!`` times the sum over all distinct orderings of the letters.

    Enumerates every arrangement explicitly; exponential cost.
    """
    total = OperatorPoly()
    for ps in combinations(range(m + n), m):
        word = "".join("p" if k in ps else "x" for k in range(m + n))
        total = total + normal_order_word(word)
    return total.scale(Fraction(factorial(m) * factorial(n), factorial(m + n)))
