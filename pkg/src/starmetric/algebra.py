"""Exact coefficient arithmetic and the phase-space containers.

Everything here is immutable.  Coefficients live in Q(i), the Gaussian
rationals, so that results can be compared exactly against printed fractions.

Monomials are keyed by plain ``(xdeg, pdeg)`` tuples; :class:`PhaseMonomial`
is a named view of the same tuple and compares/hashes identically, so either
can be used to index a :class:`PhasePoly`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

Rational = Union[int, Fraction]
Number = Union[int, Fraction, "GaussianRational"]


def _q(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot make an exact rational from {value!r}")


class GaussianRational:
    """Complex number ``re + i*im`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[Rational, str] = 0, im: Union[Rational, str] = 0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(value)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussianRational(a * c)
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other) * self.inverse()
        return NotImplemented

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # comparisons ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"({self.re} {sign} {_imag_str(abs(self.im))})"


def _imag_str(v: Fraction) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{v}*i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


class PhaseMonomial(NamedTuple):
    """``p^pdeg x^xdeg``; interchangeable with the tuple ``(xdeg, pdeg)``."""

    xdeg: int
    pdeg: int

    @property
    def degree(self) -> int:
        return self.xdeg + self.pdeg


def monomial_key(mono: Tuple[int, int]) -> Tuple[int, int]:
    """Graded lex key with p ranked above x: larger key = higher monomial."""
    x, p = mono
    return (x + p, p)


def _coerce_coeff(c) -> GaussianRational:
    return c if isinstance(c, GaussianRational) else GaussianRational(c)


class PhasePoly:
    """Sparse polynomial in the commuting phase-space symbols x and p."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Tuple[int, int], Number]] = None):
        clean: Dict[Tuple[int, int], GaussianRational] = {}
        if terms:
            for mono, c in terms.items():
                c = _coerce_coeff(c)
                if c:
                    x, p = mono
                    if x < 0 or p < 0:
                        raise ValueError(f"negative exponent in monomial {mono}")
                    clean[(int(x), int(p))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Tuple[int, int], GaussianRational]) -> "PhasePoly":
        # trusted constructor: caller guarantees nonzero GaussianRational values
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Number) -> "PhasePoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, xdeg: int, pdeg: int, c: Number = 1) -> "PhasePoly":
        return cls({(xdeg, pdeg): c})

    @classmethod
    def x(cls) -> "PhasePoly":
        return cls({(1, 0): 1})

    @classmethod
    def p(cls) -> "PhasePoly":
        return cls({(0, 1): 1})

    # container protocol ----------------------------------------------------
    @property
    def terms(self) -> Dict[Tuple[int, int], GaussianRational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __getitem__(self, mono) -> GaussianRational:
        return self._terms.get(tuple(mono), ZERO)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def is_real(self) -> bool:
        return all(not c.im for c in self._terms.values())

    def sorted_terms(self, descending: bool = True) -> List[Tuple[PhaseMonomial, GaussianRational]]:
        keys = sorted(self._terms, key=monomial_key, reverse=descending)
        return [(PhaseMonomial(*k), self._terms[k]) for k in keys]

    def leading_monomial(self) -> PhaseMonomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return PhaseMonomial(*max(self._terms, key=monomial_key))

    @property
    def degree(self) -> int:
        return max((x + p for x, p in self._terms), default=-1)

    @property
    def xdegree(self) -> int:
        return max((x for x, _ in self._terms), default=-1)

    @property
    def pdegree(self) -> int:
        return max((p for _, p in self._terms), default=-1)

    # equality ---------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, PhasePoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == PhasePoly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return PhasePoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return PhasePoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if isinstance(other, PhasePoly):
            return poly_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(GaussianRational.coerce(other).inverse())
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = PhasePoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Number) -> "PhasePoly":
        c = _coerce_coeff(c)
        if not c:
            return PhasePoly._raw({})
        return PhasePoly._raw({m: v * c for m, v in self._terms.items()})

    def conjugate(self) -> "PhasePoly":
        return PhasePoly._raw({m: c.conjugate() for m, c in self._terms.items()})

    def real_part(self) -> "PhasePoly":
        return PhasePoly({m: c.re for m, c in self._terms.items()})

    def imag_part(self) -> "PhasePoly":
        return PhasePoly({m: c.im for m, c in self._terms.items()})

    def diff_x(self, k: int = 1) -> "PhasePoly":
        out = {}
        for (x, p), c in self._terms.items():
            if x >= k:
                out[(x - k, p)] = c * _falling(x, k)
        return PhasePoly._raw(out)

    def diff_p(self, k: int = 1) -> "PhasePoly":
        out = {}
        for (x, p), c in self._terms.items():
            if p >= k:
                out[(x, p - k)] = c * _falling(p, k)
        return PhasePoly._raw(out)

    def evaluate(self, x: complex, p: complex) -> complex:
        return sum(complex(c) * x**mx * p**mp for (mx, mp), c in self._terms.items())

    def __repr__(self):
        return f"PhasePoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _as_poly(v) -> Optional[PhasePoly]:
    if isinstance(v, PhasePoly):
        return v
    if isinstance(v, (int, Fraction, GaussianRational)):
        return PhasePoly.constant(v)
    return None


def _falling(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out


def poly_add(a: PhasePoly, b: PhasePoly) -> PhasePoly:
    return a + b


def poly_scale(a: PhasePoly, c: Number) -> PhasePoly:
    return a.scale(c)


def poly_mul(a: PhasePoly, b: Union[PhasePoly, Number]) -> PhasePoly:
    """Commutative product; a scalar ``b`` scales."""
    if not isinstance(b, PhasePoly):
        return a.scale(b)
    if len(a._terms) > len(b._terms):
        a, b = b, a
    out: Dict[Tuple[int, int], GaussianRational] = {}
    for (x1, p1), c1 in a._terms.items():
        for (x2, p2), c2 in b._terms.items():
            key = (x1 + x2, p1 + p2)
            v = out.get(key)
            out[key] = c1 * c2 if v is None else v + c1 * c2
    return PhasePoly._raw({m: c for m, c in out.items() if c})


# ---------------------------------------------------------------------------
# formatting


def _rational_str(v: Fraction) -> str:
    return str(v)


def _coeff_prefix(c: GaussianRational, first: bool, has_monomial: bool) -> str:
    """Sign-aware coefficient text for one term."""
    if c.im and c.re:
        body = f"({c.re} {'+' if c.im > 0 else '-'} {_imag_str(abs(c.im))})"
        lead = "" if first else " + "
        return lead + (body + "*" if has_monomial else body)
    value = c.re if not c.im else c.im
    imag = bool(c.im)
    neg = value < 0
    mag = -value if neg else value
    if first:
        lead = "-" if neg else ""
    else:
        lead = " - " if neg else " + "
    if imag:
        text = "i" if mag == 1 else f"{mag}*i"
    else:
        text = "" if (mag == 1 and has_monomial) else str(mag)
    if has_monomial and text:
        text += "*"
    return lead + text


def _mono_str(x: int, p: int, xname: str = "x", pname: str = "p") -> str:
    parts = []
    if p:
        parts.append(pname if p == 1 else f"{pname}^{p}")
    if x:
        parts.append(xname if x == 1 else f"{xname}^{x}")
    return "*".join(parts)


def format_poly(f: PhasePoly, xname: str = "x", pname: str = "p") -> str:
    """Deterministic text in canonical (descending graded-lex) order."""
    if not f:
        return "0"
    out = []
    for k, (mono, c) in enumerate(f.sorted_terms()):
        ms = _mono_str(mono.xdeg, mono.pdeg, xname, pname)
        out.append(_coeff_prefix(c, k == 0, bool(ms)) + ms)
    return "".join(out)


# ---------------------------------------------------------------------------
# exponential-weighted polynomials


class ExpWeightedPoly:
    """``exp(exponent(p)) * body(x, p)`` with a pure-p exponent."""

    __slots__ = ("exponent", "body")

    def __init__(self, exponent: Optional[PhasePoly] = None, body: Union[PhasePoly, Number, None] = None):
        exponent = PhasePoly() if exponent is None else exponent
        if any(x for x, _ in exponent):
            raise ValueError("exponent of an ExpWeightedPoly must not depend on x")
        if body is None:
            body = PhasePoly.constant(1)
        elif not isinstance(body, PhasePoly):
            body = PhasePoly.constant(body)
        self.exponent = exponent
        self.body = body

    @classmethod
    def lift(cls, f: Union["ExpWeightedPoly", PhasePoly, Number]) -> "ExpWeightedPoly":
        if isinstance(f, ExpWeightedPoly):
            return f
        return cls(PhasePoly(), f)

    @property
    def is_polynomial(self) -> bool:
        return not self.exponent or not self.body

    def as_poly(self) -> PhasePoly:
        if not self.is_polynomial:
            raise ValueError("exponential weight does not cancel; not a polynomial")
        return self.body

    def __eq__(self, other):
        if isinstance(other, PhasePoly):
            other = ExpWeightedPoly.lift(other)
        if not isinstance(other, ExpWeightedPoly):
            return NotImplemented
        if not self.body and not other.body:
            return True
        return self.exponent == other.exponent and self.body == other.body

    def __hash__(self):
        if not self.body:
            return hash(PhasePoly())
        return hash((self.exponent, self.body))

    def __bool__(self):
        return bool(self.body)

    def __add__(self, other):
        other = ExpWeightedPoly.lift(other)
        if not other.body:
            return self
        if not self.body:
            return other
        if self.exponent != other.exponent:
            raise ValueError("cannot add ExpWeightedPoly values with different exponents")
        return ExpWeightedPoly(self.exponent, self.body + other.body)

    __radd__ = __add__

    def __neg__(self):
        return ExpWeightedPoly(self.exponent, -self.body)

    def __sub__(self, other):
        return self + (-ExpWeightedPoly.lift(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return ExpWeightedPoly(self.exponent, self.body.scale(other))
        other = ExpWeightedPoly.lift(other) if isinstance(other, PhasePoly) else other
        if isinstance(other, ExpWeightedPoly):
            return ExpWeightedPoly(self.exponent + other.exponent, poly_mul(self.body, other.body))
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c: Number) -> "ExpWeightedPoly":
        return ExpWeightedPoly(self.exponent, self.body.scale(c))

    def conjugate(self) -> "ExpWeightedPoly":
        return ExpWeightedPoly(self.exponent.conjugate(), self.body.conjugate())

    def diff_x(self, k: int = 1) -> "ExpWeightedPoly":
        return ExpWeightedPoly(self.exponent, self.body.diff_x(k))

    def diff_p(self, k: int = 1) -> "ExpWeightedPoly":
        ds = self.exponent.diff_p()
        body = self.body
        for _ in range(k):
            body = poly_mul(ds, body) + body.diff_p()
        return ExpWeightedPoly(self.exponent, body)

    @property
    def xdegree(self) -> int:
        return self.body.xdegree

    def __repr__(self):
        return f"ExpWeightedPoly({self})"

    def __str__(self):
        if not self.exponent:
            return format_poly(self.body)
        return f"exp({format_poly(self.exponent)})*({format_poly(self.body)})"


def diff_x(f, k: int = 1):
    return f.diff_x(k)


def diff_p(f, k: int = 1):
    return f.diff_p(k)


def conjugate_symbol(f):
    """Complex-conjugate every coefficient (Weyl-symbol adjoint)."""
    return f.conjugate()


# ---------------------------------------------------------------------------
# power series in the coupling


class GSeries:
    """Formal series ``exp(g*g_exponent(p)) * sum_n g^n coeffs[n]``.

    ``truncation_order=None`` marks a series that is exact as written (all
    coefficients past the stored ones vanish); an integer ``N`` means terms
    from ``g^(N+1)`` on are unknown.  ``g_exponent`` is only non-zero for the
    closed-form metrics of the exactly solvable case; the perturbative
    pipeline keeps it at zero.
    """

    __slots__ = ("coeffs", "truncation_order", "g_exponent")

    def __init__(
        self,
        coeffs: Sequence[Union[ExpWeightedPoly, PhasePoly, Number]],
        truncation_order: Optional[int] = None,
        g_exponent: Optional[PhasePoly] = None,
    ):
        cs = [ExpWeightedPoly.lift(c if not isinstance(c, (int, Fraction, GaussianRational)) else PhasePoly.constant(c)) for c in coeffs]
        if truncation_order is not None:
            if truncation_order < 0:
                raise ValueError("truncation order must be nonnegative")
            cs = cs[: truncation_order + 1]
            cs += [ExpWeightedPoly.lift(PhasePoly())] * (truncation_order + 1 - len(cs))
        else:
            while cs and not cs[-1]:
                cs.pop()
        g_exponent = PhasePoly() if g_exponent is None else g_exponent
        if any(x for x, _ in g_exponent):
            raise ValueError("g_exponent must be a pure-p polynomial")
        self.coeffs: Tuple[ExpWeightedPoly, ...] = tuple(cs)
        self.truncation_order = truncation_order
        self.g_exponent = g_exponent

    @classmethod
    def from_polys(cls, polys: Sequence[PhasePoly], truncation_order: Optional[int] = None) -> "GSeries":
        return cls(list(polys), truncation_order)

    @property
    def last_index(self) -> int:
        if self.truncation_order is not None:
            return self.truncation_order
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> ExpWeightedPoly:
        if n < 0:
            raise IndexError(n)
        if self.truncation_order is not None and n > self.truncation_order:
            raise IndexError(f"coefficient g^{n} beyond truncation order {self.truncation_order}")
        if n < len(self.coeffs):
            return self.coeffs[n]
        return ExpWeightedPoly.lift(PhasePoly())

    def poly(self, n: int) -> PhasePoly:
        return self[n].as_poly()

    def polys(self) -> List[PhasePoly]:
        return [self.poly(n) for n in range(self.last_index + 1)]

    def __len__(self):
        return self.last_index + 1

    def __eq__(self, other):
        if not isinstance(other, GSeries):
            return NotImplemented
        n = max(self.last_index, other.last_index)
        if self.g_exponent != other.g_exponent:
            return False
        if self.truncation_order != other.truncation_order:
            return False
        return all(self._get(k) == other._get(k) for k in range(n + 1))

    def __hash__(self):
        return hash((self.coeffs, self.truncation_order, self.g_exponent))

    def _get(self, n: int) -> ExpWeightedPoly:
        if n < len(self.coeffs):
            return self.coeffs[n]
        return ExpWeightedPoly.lift(PhasePoly())

    def truncate(self, order: Optional[int]) -> "GSeries":
        return GSeries(self.coeffs, _min_order(self.truncation_order, order), self.g_exponent)

    def __add__(self, other: "GSeries") -> "GSeries":
        if self.g_exponent != other.g_exponent:
            raise ValueError("series with different exponential weights cannot be added")
        order = _min_order(self.truncation_order, other.truncation_order)
        n = max(len(self.coeffs), len(other.coeffs))
        return GSeries([self._get(k) + other._get(k) for k in range(n)], order, self.g_exponent)

    def __neg__(self):
        return GSeries([-c for c in self.coeffs], self.truncation_order, self.g_exponent)

    def __sub__(self, other: "GSeries") -> "GSeries":
        return self + (-other)

    def scale(self, c: Number) -> "GSeries":
        return GSeries([x.scale(c) for x in self.coeffs], self.truncation_order, self.g_exponent)

    def conjugate(self) -> "GSeries":
        """Coefficient-wise conjugation, g treated as real."""
        return GSeries([c.conjugate() for c in self.coeffs], self.truncation_order, self.g_exponent.conjugate())

    def reflect(self) -> "GSeries":
        """The same series with ``g -> -g``."""
        return GSeries(
            [c if n % 2 == 0 else -c for n, c in enumerate(self.coeffs)],
            self.truncation_order,
            -self.g_exponent,
        )

    def odd_coefficients_vanish(self) -> bool:
        return all(not c for n, c in enumerate(self.coeffs) if n % 2)

    def evaluate(self, g: Rational) -> ExpWeightedPoly:
        """Sum the stored terms at a numeric coupling."""
        g = _q(g)
        body = PhasePoly()
        exponent = None
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            if exponent is None:
                exponent = c.exponent
            elif c.exponent != exponent:
                raise ValueError("coefficients carry different exponential weights")
            body = body + c.body.scale(g**n)
        total = self.g_exponent.scale(g) + (exponent or PhasePoly())
        return ExpWeightedPoly(total, body)

    def __repr__(self):
        return f"GSeries(order={self.truncation_order}, g_exponent={self.g_exponent}, coeffs={[str(c) for c in self.coeffs]})"


def _min_order(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# ---------------------------------------------------------------------------


class HamiltonianSplit:
    """``H = h0 + i*g*h1`` with real Weyl symbols ``h0``, ``h1``."""

    __slots__ = ("h0", "h1", "parameters")

    def __init__(self, h0: PhasePoly, h1: PhasePoly, parameters: Optional[Mapping[str, Rational]] = None):
        if not h0.is_real() or not h1.is_real():
            raise ValueError("h0 and h1 must have real coefficients (Hermitian Weyl symbols)")
        self.h0 = h0
        self.h1 = h1
        self.parameters = {k: _q(v) for k, v in (parameters or {}).items()}

    @property
    def symbol(self) -> GSeries:
        """The full symbol as an exact series in g."""
        return GSeries([self.h0, self.h1.scale(I)])

    @property
    def adjoint_symbol(self) -> GSeries:
        return GSeries([self.h0, self.h1.scale(-I)])

    @property
    def degree(self) -> int:
        return max(self.h0.degree, self.h1.degree)

    def __eq__(self, other):
        if not isinstance(other, HamiltonianSplit):
            return NotImplemented
        return (self.h0, self.h1, self.parameters) == (other.h0, other.h1, other.parameters)

    def __repr__(self):
        return f"HamiltonianSplit(h0={self.h0}, h1={self.h1}, parameters={ {k: str(v) for k, v in self.parameters.items()} })"


def parse_poly(text: str) -> PhasePoly:
    """Small convenience reader for commuting polynomials like ``"4*p^3/3 + 2*p*x^2"``.

    Accepts ``x``, ``p``, ``i``, integers, ``/``, ``*``, ``^``, ``+``, ``-`` and
    parentheses.  Handy for writing reference values in tests.
    """
    from .expr import parse, lower_symbol

    series = lower_symbol(parse(text, symbol_mode=True), {})
    if len(series) > 1:
        raise ValueError("parse_poly does not accept the coupling G")
    return series[0] if series else PhasePoly()


def iter_nonzero(series: GSeries) -> Iterable[Tuple[int, ExpWeightedPoly]]:
    for n, c in enumerate(series.coeffs):
        if c:
            yield n, c
