"""Metric, similarity transformation and Hermitian counterpart of ``H = h0 + i g h1``.

Pipeline:

1. :func:`build_pde` turns ``H^† ⋆ eta2 = eta2 ⋆ H`` into a linear
   differential operator ``L`` with ``L[eta2] = 0`` (the operator is
   normalised as ``2i (H^† ⋆ eta2 - eta2 ⋆ H)``).
2. Either :func:`solve_exact` (``eta2 = exp(g s(p))``) or
   :func:`solve_perturbative` followed by :func:`normalize`
   (``eta2 = sum g^n c_n``, fixed by ``eta2(g) ⋆ eta2(-g) = 1``).
3. :func:`star_sqrt` and :func:`star_inverse` give ``eta`` and ``eta^-1``.
4. :func:`hermitian_counterpart` returns ``h = eta ⋆ H ⋆ eta^-1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import (
    I,
    ZERO,
    ExpWeightedPoly,
    GaussianRational,
    GSeries,
    HamiltonianSplit,
    PhasePoly,
    _coeff_prefix,
    monomial_key,
)
from .linsolve import ExactSolver, InconsistentSystem
from .ordering import (
    hermitian_check,
    op_adjoint,
    standard_quantize,
    standard_symbol,
    weyl_quantize,
    weyl_to_standard,
)
from .star import STANDARD, STAR, _moyal_weight, _series_dp, _series_dx, product_name, series_mul, star

log = logging.getLogger(__name__)


class NoExactSolution(ArithmeticError):
    """The ``exp(g s(p))`` ansatz admits no solution."""


class Unsolvable(ArithmeticError):
    """No polynomial solution within the allowed degree escalation."""


class NormalizationObstruction(ArithmeticError):
    """``eta2(g) ⋆ eta2(-g) = 1`` cannot be met inside the kernel span."""


class OddOrderResidual(ArithmeticError):
    """An odd power of g survived in the Hermitian counterpart."""


# ---------------------------------------------------------------------------
# differential operators


class LinearDiffOp:
    """``sum g^k coef[k, a, b](x, p) d_x^a d_p^b`` acting on symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, int, int], PhasePoly]] = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def add_term(self, gpow: int, a: int, b: int, coef: PhasePoly) -> None:
        key = (gpow, a, b)
        v = self.terms.get(key, PhasePoly()) + coef
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    @property
    def g_degree(self) -> int:
        return max((k for k, _, _ in self.terms), default=-1)

    def part(self, gpow: int) -> "LinearDiffOp":
        return LinearDiffOp({k: v for k, v in self.terms.items() if k[0] == gpow})

    def scale(self, c) -> "LinearDiffOp":
        return LinearDiffOp({k: v.scale(c) for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LinearDiffOp):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "LinearDiffOp") -> "LinearDiffOp":
        out = LinearDiffOp(dict(self.terms))
        for (k, a, b), v in other.terms.items():
            out.add_term(k, a, b, v)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def apply(self, f: Union[PhasePoly, ExpWeightedPoly], gpow: Optional[int] = None):
        """Apply the ``g^gpow`` part (or, with ``gpow=None``, all parts ignoring g)."""
        out = None
        for (k, a, b), coef in self.terms.items():
            if gpow is not None and k != gpow:
                continue
            d = f.diff_x(a).diff_p(b)
            term = d * coef if isinstance(d, ExpWeightedPoly) else coef * d
            out = term if out is None else out + term
        if out is None:
            return PhasePoly() if isinstance(f, PhasePoly) else ExpWeightedPoly(f.exponent, PhasePoly())
        return out

    def apply_series(self, s: GSeries) -> GSeries:
        """``L[s]`` with g-powers of the coefficients collected into the series."""
        out = GSeries([], s.truncation_order, s.g_exponent)
        for (k, a, b), coef in self.terms.items():
            d = _series_dp(_series_dx(s, a), b)
            shifted = GSeries([PhasePoly()] * k + [c * ExpWeightedPoly.lift(coef) for c in d.coeffs], s.truncation_order, s.g_exponent)
            out = out + shifted
        return out

    def format(self, unknown: str = "eta2") -> str:
        """Human-readable ``... = 0`` in a fixed term order."""
        pieces = []
        for (k, a, b) in sorted(self.terms, key=lambda t: (t[1] + t[2], t[1], t[2], t[0])):
            for mono, c in self.terms[(k, a, b)].sorted_terms():
                factors = []
                if k:
                    factors.append("g" if k == 1 else f"g^{k}")
                if mono.pdeg:
                    factors.append("p" if mono.pdeg == 1 else f"p^{mono.pdeg}")
                if mono.xdeg:
                    factors.append("x" if mono.xdeg == 1 else f"x^{mono.xdeg}")
                if a:
                    factors.append("dx" if a == 1 else f"dx^{a}")
                if b:
                    factors.append("dp" if b == 1 else f"dp^{b}")
                factors.append(unknown)
                pieces.append((c, "*".join(factors)))
        if not pieces:
            return "0 = 0"
        text = "".join(_coeff_prefix(c, j == 0, True) + body for j, (c, body) in enumerate(pieces))
        return text + " = 0"

    def __repr__(self):
        return f"LinearDiffOp({self.format()})"


def build_pde(H: HamiltonianSplit, product: str = STAR) -> LinearDiffOp:
    """The operator ``L`` with ``L[eta2] = 2i (H^† • eta2 - eta2 • H)``.

    For ``product="star"`` the symbols are Weyl symbols and ``H^†`` is plain
    conjugation.  For ``product="standard"`` both ``H`` and ``H^†`` are taken
    as standard-ordering symbols, the adjoint going through the operator.
    """
    product = product_name(product)
    L = LinearDiffOp()
    two_i = GaussianRational(0, 2)
    if product == STAR:
        right = H.symbol.coeffs
        left = H.adjoint_symbol.coeffs
        for k in range(len(right)):
            A = left[k].body if k < len(left) else PhasePoly()
            B = right[k].body
            # A ⋆ eta: d_x^u d_p^t A * d_p^u d_x^t eta
            for u in range(max(A.xdegree, -1) + 1):
                for t in range(max(A.pdegree, -1) + 1):
                    coef = A.diff_x(u).diff_p(t)
                    if coef:
                        L.add_term(k, t, u, coef.scale(_moyal_weight(u, t) * two_i))
            # eta ⋆ B: d_x^u d_p^t eta * d_p^u d_x^t B
            for u in range(max(B.pdegree, -1) + 1):
                for t in range(max(B.xdegree, -1) + 1):
                    coef = B.diff_p(u).diff_x(t)
                    if coef:
                        L.add_term(k, u, t, coef.scale(-_moyal_weight(u, t) * two_i))
    elif product == STANDARD:
        for k, c in enumerate(H.symbol.coeffs):
            B = weyl_to_standard(c.body)
            A = standard_symbol(op_adjoint(standard_quantize(B)))
            for s in range(max(A.xdegree, -1) + 1):
                coef = A.diff_x(s)
                if coef:
                    L.add_term(k, 0, s, coef.scale(I**s * Fraction(1, factorial(s)) * two_i))
            for s in range(max(B.pdegree, -1) + 1):
                coef = B.diff_p(s)
                if coef:
                    L.add_term(k, s, 0, coef.scale(-(I**s) * Fraction(1, factorial(s)) * two_i))
    else:
        raise ValueError("the intertwining relation needs the star or standard product")
    return L


def symbols_for(H: HamiltonianSplit, product: str) -> Tuple[GSeries, GSeries]:
    """``(H, H^†)`` as exact g-series of symbols in the picture of ``product``."""
    product = product_name(product)
    if product == STAR:
        return H.symbol, H.adjoint_symbol
    right = [weyl_to_standard(c.body) for c in H.symbol.coeffs]
    left = [standard_symbol(op_adjoint(standard_quantize(b))) for b in right]
    return GSeries(right), GSeries(left)


# ---------------------------------------------------------------------------
# results


@dataclass
class KernelBasis:
    """Echelon basis of polynomial solutions of ``L0[k] = 0`` up to a degree.

    Each generator is monic at its leading monomial and has zero coefficient
    at every other generator's leading monomial.
    """

    generators: List[PhasePoly]
    degree: int

    @property
    def pivots(self) -> List[Tuple[int, int]]:
        return [tuple(g.leading_monomial()) for g in self.generators]

    def project(self, f: PhasePoly) -> PhasePoly:
        """Remove the kernel component by zeroing ``f`` at every pivot."""
        for g, piv in zip(self.generators, self.pivots):
            c = f[piv]
            if c:
                f = f - g.scale(c)
        return f

    def contains(self, f: PhasePoly) -> bool:
        return not self.project(f)


@dataclass
class PerturbativeRaw:
    """Output of :func:`solve_perturbative`.

    ``particular[n]`` is the canonical particular solution of the order-n
    equation driven by ``particular[n-1]`` (so ``particular`` is the pure
    chain starting from ``c0 = 1``); ``kernels[n]`` is the kernel at the
    degree bound used at order n.
    """

    hamiltonian: HamiltonianSplit
    product: str
    pde: LinearDiffOp
    particular: List[PhasePoly]
    kernels: List[KernelBasis]
    degrees: List[int]
    max_escalations: int = 2


@dataclass
class MetricSolution:
    eta_squared: GSeries
    eta: GSeries
    eta_inverse: GSeries
    h: GSeries
    mode: str
    product: str = STAR
    diagnostics: Dict[str, object] = field(default_factory=dict)
    particular: Optional[List[PhasePoly]] = None


# ---------------------------------------------------------------------------
# order-by-order solver


def _monomials_upto(D: int) -> List[Tuple[int, int]]:
    out = [(x, d - x) for d in range(D + 1) for x in range(d + 1)]
    # low monomials pivot first; the highest monomial of each degree is left free
    return sorted(out, key=monomial_key)


class _OrderSolver:
    """Solves ``L0[c] = rhs`` for polynomial ``c`` of bounded degree."""

    def __init__(self, L: LinearDiffOp, step: int, max_escalations: int = 2):
        self.L0 = L.part(0)
        self.L = L
        self.step = step
        self.max_escalations = max_escalations
        self._cache: Dict[int, Tuple[ExactSolver, KernelBasis]] = {}
        self._images: Dict[Tuple[int, int], PhasePoly] = {}

    def _image(self, mono: Tuple[int, int]) -> PhasePoly:
        v = self._images.get(mono)
        if v is None:
            v = self.L0.apply(PhasePoly.monomial(*mono))
            self._images[mono] = v
        return v

    def system(self, D: int) -> Tuple[ExactSolver, KernelBasis]:
        hit = self._cache.get(D)
        if hit is not None:
            return hit
        cols = _monomials_upto(D)
        rows: Dict[Tuple[int, int], Dict] = {}
        for m in cols:
            for out_mono, c in self._image(m).items():
                rows.setdefault(out_mono, {})[m] = c
        solver = ExactSolver(rows, cols)
        kernel = _echelon([PhasePoly(v) for v in solver.nullspace()], D)
        self._cache[D] = (solver, kernel)
        return solver, kernel

    def solve(self, rhs: PhasePoly, D: int) -> Tuple[PhasePoly, KernelBasis, int]:
        """Canonical particular solution; escalates the degree bound if needed."""
        step = self.step
        last_error = None
        for round_ in range(self.max_escalations + 1):
            Dr = D + round_ * step
            solver, kernel = self.system(Dr)
            try:
                sol = solver.solve(dict(rhs.items()))
            except InconsistentSystem as exc:
                last_error = exc
                log.info("order system inconsistent at degree %d, escalating", Dr)
                continue
            c = kernel.project(PhasePoly(sol))
            return c, kernel, Dr
        raise Unsolvable(f"no polynomial solution up to degree {D + self.max_escalations * step}") from last_error


def _echelon(vectors: List[PhasePoly], degree: int) -> KernelBasis:
    """Reduced echelon form with respect to the graded-lex monomial order."""
    basis: List[PhasePoly] = []
    for v in vectors:
        for b in basis:
            lm = tuple(b.leading_monomial())
            c = v[lm]
            if c:
                v = v - b.scale(c)
        if not v:
            continue
        lm = tuple(v.leading_monomial())
        v = v.scale(v[lm].inverse())
        basis = [b - v.scale(b[lm]) if b[lm] else b for b in basis]
        basis.append(v)
    basis.sort(key=lambda b: monomial_key(tuple(b.leading_monomial())))
    return KernelBasis(basis, degree)


def _rhs(L: LinearDiffOp, cs: Sequence[PhasePoly], n: int) -> PhasePoly:
    """``-sum_{k>=1} L_k[c_{n-k}]``."""
    out = PhasePoly()
    for k in range(1, L.g_degree + 1):
        if n - k >= 0:
            out = out - L.apply(cs[n - k], gpow=k)
    return out


def _degree_bound(H: HamiltonianSplit, n: int) -> int:
    return n * max(H.degree, 1)


def solve_perturbative(H: HamiltonianSplit, order: int, product: str = STAR, max_escalations: int = 2) -> PerturbativeRaw:
    """Particular solutions ``c~_0 = 1, c~_1, ..., c~_order`` of the recursion.

    Each ``c~_n`` is the solution of ``L0[c] = -sum_k L_k[c~_{n-k}]`` with no
    component along the kernel of ``L0`` (zero at every kernel pivot).
    """
    product = product_name(product)
    L = build_pde(H, product)
    solver = _OrderSolver(L, max(H.degree, 1), max_escalations)
    cs = [PhasePoly.constant(1)]
    kernels = [KernelBasis([PhasePoly.constant(1)], 0)]
    degrees = [0]
    for n in range(1, order + 1):
        c, kernel, D = solver.solve(_rhs(L, cs, n), _degree_bound(H, n))
        cs.append(c)
        kernels.append(kernel)
        degrees.append(D)
    raw = PerturbativeRaw(H, product, L, cs, kernels, degrees, max_escalations)
    raw._solver = solver  # reused by normalize
    return raw


def _et_sum(cs: Sequence[PhasePoly], n: int, product: str, skip_ends: bool) -> PhasePoly:
    # coefficient of g^n in eta2(g) • eta2(-g)
    lo, hi = (1, n - 1) if skip_ends else (0, n)
    out = PhasePoly()
    for k in range(lo, hi + 1):
        term = star(cs[k], cs[n - k], product)
        out = out + (term if (n - k) % 2 == 0 else -term)
    return out


def normalize(raw: PerturbativeRaw, kernel_shifts: Optional[Dict[int, PhasePoly]] = None) -> Tuple[GSeries, Dict[str, object]]:
    """Fix the kernel freedom order by order so that ``eta2(g) • eta2(-g) = 1``.

    At even orders the relation determines ``c_n`` completely; the difference
    from the particular solution must lie in the kernel.  At odd orders the
    relation does not involve ``c_n`` and its kernel part is set to zero.
    ``kernel_shifts`` adds arbitrary extra terms to the particular solution
    at chosen orders (used to probe convention independence).
    """
    H, L, product = raw.hamiltonian, raw.pde, raw.product
    solver = getattr(raw, "_solver", None)
    if solver is None:
        solver = _OrderSolver(L, max(H.degree, 1), raw.max_escalations)
    shifts = kernel_shifts or {}
    N = len(raw.particular) - 1
    cs = [PhasePoly.constant(1)]
    added: Dict[int, PhasePoly] = {}
    odd_orders = {}
    for n in range(1, N + 1):
        c, kernel, D = solver.solve(_rhs(L, cs, n), _degree_bound(H, n))
        c = c + shifts.get(n, PhasePoly())
        if n % 2 == 0:
            target = _et_sum(cs + [PhasePoly()], n, product, skip_ends=True).scale(Fraction(-1, 2))
            zeta = target - c
            if zeta and not kernel.contains(zeta):
                # the kernel may need a higher degree than the particular solution
                wider = solver.system(max(D, zeta.degree))[1]
                if not wider.contains(zeta):
                    raise NormalizationObstruction(f"order {n}: required correction {zeta} is not a kernel element")
            added[n] = zeta
            cs.append(target)
        else:
            cs.append(c)
            residual = _et_sum(cs, n, product, skip_ends=False)
            odd_orders[n] = {
                "kernel_set_to_zero": True,
                "et_residual_zero": not residual,
            }
    series = GSeries(cs, N)
    diagnostics = {"kernel_additions": added, "odd_orders": odd_orders}
    return series, diagnostics


# ---------------------------------------------------------------------------
# square root, inverse, counterpart


def star_sqrt(eta_squared: GSeries, product: str = STAR) -> GSeries:
    """``eta`` with ``eta • eta = eta_squared`` order by order (``c0 = 1``)."""
    if eta_squared.g_exponent:
        if any(n > 0 and c for n, c in enumerate(eta_squared.coeffs)) or eta_squared[0] != ExpWeightedPoly.lift(PhasePoly.constant(1)):
            raise ValueError("closed-form square root needs eta2 = exp(g s(p))")
        return GSeries([1], eta_squared.truncation_order, eta_squared.g_exponent.scale(Fraction(1, 2)))
    if eta_squared.poly(0) != PhasePoly.constant(1):
        raise ValueError("star_sqrt needs leading coefficient 1")
    N = eta_squared.last_index
    qs = [PhasePoly.constant(1)]
    for n in range(1, N + 1):
        acc = eta_squared.poly(n)
        for k in range(1, n):
            acc = acc - star(qs[k], qs[n - k], product)
        qs.append(acc.scale(Fraction(1, 2)))
    return GSeries(qs, eta_squared.truncation_order)


def star_inverse(eta: GSeries, product: str = STAR) -> GSeries:
    """Right inverse ``r`` with ``eta • r = 1`` to the truncation order."""
    if eta.g_exponent:
        if any(n > 0 and c for n, c in enumerate(eta.coeffs)) or eta[0] != ExpWeightedPoly.lift(PhasePoly.constant(1)):
            raise ValueError("closed-form inverse needs eta = exp(g s(p))")
        return GSeries([1], eta.truncation_order, -eta.g_exponent)
    if eta.poly(0) != PhasePoly.constant(1):
        raise ValueError("star_inverse needs leading coefficient 1")
    N = eta.last_index
    rs = [PhasePoly.constant(1)]
    for n in range(1, N + 1):
        acc = PhasePoly()
        for k in range(1, n + 1):
            acc = acc - star(eta.poly(k), rs[n - k], product)
        rs.append(acc)
    return GSeries(rs, eta.truncation_order)


def hermitian_counterpart(H: HamiltonianSplit, eta: GSeries, product: str = STAR, eta_inverse: Optional[GSeries] = None) -> GSeries:
    """``h = eta ⋆ H ⋆ eta^-1``; odd powers of g must cancel exactly."""
    product = product_name(product)
    Hs, _ = symbols_for(H, product)
    inv = eta_inverse if eta_inverse is not None else star_inverse(eta, product)
    h = series_mul(series_mul(eta, Hs, product), inv, product)
    if h.g_exponent:
        raise ValueError("exponential weights did not cancel in eta ⋆ H ⋆ eta^-1")
    for n, c in enumerate(h.coeffs):
        if not c.is_polynomial:
            raise ValueError(f"coefficient g^{n} of h is not a polynomial")
        if n % 2 and c:
            raise OddOrderResidual(f"h has a nonzero g^{n} coefficient: {c}")
    for n, c in enumerate(h.coeffs):
        op = weyl_quantize(c.body) if product == STAR else standard_quantize(c.body)
        if not hermitian_check(op):
            raise OddOrderResidual(f"coefficient g^{n} of h is not Hermitian")
    return h


def verify_intertwining(H: HamiltonianSplit, eta_squared: GSeries, product: str = STAR, order: Optional[int] = None) -> Dict[int, PhasePoly]:
    """Coefficients of ``H^† • eta2 - eta2 • H``; all zero for a valid metric."""
    product = product_name(product)
    Hs, Hd = symbols_for(H, product)
    eta2 = eta_squared if order is None else eta_squared.truncate(order)
    res = series_mul(Hd, eta2, product) - series_mul(eta2, Hs, product)
    report = {}
    for n in range(res.last_index + 1):
        c = res[n]
        report[n] = c.body if c else PhasePoly()
    return report


# ---------------------------------------------------------------------------
# exactly solvable case


def solve_exact(H: HamiltonianSplit, degree: int = 5, product: str = STAR) -> MetricSolution:
    """Look for ``eta2 = exp(g s(p))`` with ``s`` a polynomial of degree <= ``degree``.

    The coefficient of ``g^1`` in ``exp(-g s) L[exp(g s)]`` is linear in the
    unknown coefficients of ``s``; it is solved exactly and the candidate is
    then checked against the full equation at every power of g.
    """
    product = product_name(product)
    L = build_pde(H, product)
    # g^1 part: sum_b L0[0,b] s^(b) + L1[0,0]
    unknowns = list(range(1, degree + 1))
    rows: Dict[Tuple[int, int], Dict[int, GaussianRational]] = {}
    rhs: Dict[Tuple[int, int], GaussianRational] = {}
    for (k, a, b), coef in L.terms.items():
        if a:
            continue
        if k == 0 and b >= 1:
            for j in unknowns:
                img = coef * PhasePoly.monomial(0, j).diff_p(b)
                for mono, v in img.items():
                    rows.setdefault(mono, {})[j] = rows.get(mono, {}).get(j, ZERO) + v
        elif k == 1 and b == 0:
            for mono, v in coef.items():
                rhs[mono] = rhs.get(mono, ZERO) - v
    for mono in rhs:
        rows.setdefault(mono, {})
    solver = ExactSolver(rows, unknowns)
    try:
        sol = solver.solve(rhs)
    except InconsistentSystem as exc:
        raise NoExactSolution(f"no exponent of degree <= {degree} solves the order-g equation") from exc
    sigma = PhasePoly({(0, j): v for j, v in sol.items()})
    eta2 = GSeries([1], None, sigma)
    residual = L.apply_series(eta2)
    if any(c for c in residual.coeffs):
        raise NoExactSolution(f"exp(g*({sigma})) fails the full intertwining equation")
    eta = star_sqrt(eta2, product)
    eta_inv = star_inverse(eta, product)
    h = hermitian_counterpart(H, eta, product, eta_inverse=eta_inv)
    diagnostics = {
        "free_exponent_directions": len(solver.free_columns),
        "intertwining_residual_zero": not any(verify_intertwining(H, eta2, product).values()),
    }
    return MetricSolution(eta2, eta, eta_inv, h, "exact", product, diagnostics)


def solve_metric(H: HamiltonianSplit, order: int = 6, mode: str = "auto", product: str = STAR, exact_degree: int = 5) -> MetricSolution:
    """Full pipeline; ``mode="auto"`` tries the exact ansatz first."""
    product = product_name(product)
    if mode in ("exact", "auto"):
        try:
            return solve_exact(H, exact_degree, product)
        except NoExactSolution:
            if mode == "exact":
                raise
            log.info("exact ansatz failed, falling back to perturbation theory")
    elif mode != "perturbative":
        raise ValueError(f"unknown mode {mode!r}")
    raw = solve_perturbative(H, order, product)
    eta2, diag = normalize(raw)
    eta = star_sqrt(eta2, product)
    eta_inv = star_inverse(eta, product)
    h = hermitian_counterpart(H, eta, product, eta_inverse=eta_inv)
    diag = dict(diag)
    diag["inverse_is_reflection"] = eta_inv == eta.reflect()
    diag["residual_zero_orders"] = [n for n, r in verify_intertwining(H, eta2, product).items() if not r]
    return MetricSolution(eta2, eta, eta_inv, h, "perturbative", product, diag, raw.particular)
