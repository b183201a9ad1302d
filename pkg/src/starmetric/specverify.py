"""Matrix representations in a truncated oscillator basis and spectral checks.

This is the only floating-point part of the package.  ``X = (a + a^†)/sqrt(2)``
and ``P = i (a^† - a)/sqrt(2)`` act on the lowest N oscillator states.
Matrix elements of a polynomial of degree d are computed in an enlarged
basis of size N + d and then cropped, so every entry of the returned N x N
block is exact up to roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from .algebra import GSeries, PhasePoly
from .ordering import OperatorPoly, weyl_quantize


class DimensionTooSmall(ValueError):
    pass


@dataclass
class MatrixRep:
    dim: int
    entries: np.ndarray


def ladder_matrices(n: int, omega: float = 1.0):
    """``(X, P)`` on the lowest ``n`` states of an oscillator with frequency ``omega``."""
    a = np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1).astype(complex)
    ad = a.conj().T
    x = (a + ad) / math.sqrt(2 * omega)
    p = 1j * math.sqrt(omega / 2) * (ad - a)
    return x, p


def matrix_of(A: OperatorPoly, N: int, omega: float = 1.0) -> MatrixRep:
    """N x N matrix of a normal-ordered operator ``sum c P^m X^n``."""
    deg = max(A.degree, 0)
    if N < 2 + deg:
        raise DimensionTooSmall(f"dimension {N} too small for an operator of degree {deg}")
    M = N + deg
    x, p = ladder_matrices(M, omega)
    xpow = [np.eye(M, dtype=complex)]
    ppow = [np.eye(M, dtype=complex)]
    for _ in range(deg):
        xpow.append(xpow[-1] @ x)
        ppow.append(ppow[-1] @ p)
    out = np.zeros((M, M), dtype=complex)
    for (m, n), c in A.items():
        out += complex(c) * (ppow[m] @ xpow[n])
    return MatrixRep(N, out[:N, :N])


def matrix_of_symbol(f: PhasePoly, N: int, omega: float = 1.0) -> MatrixRep:
    """Matrix of the Weyl quantization of ``f``."""
    return matrix_of(weyl_quantize(f), N, omega)


@dataclass
class SpectralReport:
    eigenvalues_H: List[complex]
    eigenvalues_h: List[float]
    max_imag: float
    pairwise_gaps: List[float]
    trusted_count: int
    g: Optional[Fraction] = None
    dim: int = 0
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def max_gap(self) -> float:
        return max(self.pairwise_gaps, default=0.0)

    def as_record(self) -> dict:
        return {
            "g": None if self.g is None else str(self.g),
            "dim": self.dim,
            "trusted_count": self.trusted_count,
            "max_imag": self.max_imag,
            "max_gap": self.max_gap,
            "eigenvalues_H": [[z.real, z.imag] for z in self.eigenvalues_H],
            "eigenvalues_h": list(self.eigenvalues_h),
            "pairwise_gaps": list(self.pairwise_gaps),
            "notes": self.notes,
        }

    def to_text(self) -> str:
        lines = [f"g = {self.g}, N = {self.dim}, trusted levels = {self.trusted_count}"]
        lines.append(f"max |Im E(H)| = {self.max_imag:.3e}, max |E(H) - E(h)| = {self.max_gap:.3e}")
        for k, (eH, eh, gap) in enumerate(zip(self.eigenvalues_H, self.eigenvalues_h, self.pairwise_gaps)):
            lines.append(f"  {k:3d}  {eH.real:.12f} {eH.imag:+.2e}i   {eh:.12f}   {gap:.2e}")
        return "\n".join(lines)


def _sorted_eigs(m: np.ndarray, hermitian: bool) -> np.ndarray:
    if hermitian:
        return np.linalg.eigvalsh((m + m.conj().T) / 2).astype(complex)
    ev = np.linalg.eigvals(m)
    return ev[np.lexsort((ev.imag, ev.real))]


def _nearest(values: np.ndarray, targets: Sequence[complex]) -> List[complex]:
    return [values[np.argmin(np.abs(values - t))] for t in targets]


def converged_levels(op: OperatorPoly, N: int, count: int, *, hermitian: bool, step: int = 50, tol: float = 1e-8, omega: float = 1.0) -> List[complex]:
    """Lowest ``count`` eigenvalues that move by less than ``tol`` under ``N -> N + step``.

    Returns the converged prefix: stops at the first level that fails the gate.
    """
    lo = _sorted_eigs(matrix_of(op, N, omega).entries, hermitian)[:count]
    hi = _sorted_eigs(matrix_of(op, N + step, omega).entries, hermitian)
    out = []
    for e, f in zip(lo, _nearest(hi, lo)):
        if abs(e - f) >= tol:
            break
        out.append(complex(e))
    return out


def truncated_symbol(h: GSeries, g: Fraction, order: int) -> PhasePoly:
    """``sum_{n <= order} g^n h_n`` as an exact polynomial."""
    out = PhasePoly()
    for n in range(order + 1):
        if n <= h.last_index:
            out = out + h.poly(n).scale(Fraction(g) ** n)
    return out


def isospectral_check(
    H_op: OperatorPoly,
    h_op: OperatorPoly,
    N: int,
    *,
    g: Optional[Fraction] = None,
    step: int = 50,
    tol: float = 1e-8,
    omega: float = 1.0,
    trusted: Optional[int] = None,
) -> SpectralReport:
    """Compare the low spectra of ``H`` (non-Hermitian) and ``h`` (Hermitian).

    At most ``N // 4`` levels are considered and only those passing the
    convergence gate for both operators are reported.  Each eigenvalue of
    ``H`` is paired with the nearest eigenvalue of ``h``; a truncated ``h``
    may carry spurious states far from the physical ones, which this pairing
    ignores.
    """
    count = min(N // 4, trusted if trusted is not None else N // 4)
    eH = converged_levels(H_op, N, count, hermitian=False, step=step, tol=tol, omega=omega)
    h_all = _sorted_eigs(matrix_of(h_op, N, omega).entries, hermitian=True)
    h_big = _sorted_eigs(matrix_of(h_op, N + step, omega).entries, hermitian=True)
    pairs = []
    for e in eH:
        f = _nearest(h_all, [e])[0]
        f2 = _nearest(h_big, [f])[0]
        if abs(f - f2) >= tol:
            break
        pairs.append((e, f.real))
    eH = [e for e, _ in pairs]
    eh = [f for _, f in pairs]
    gaps = [abs(e - f) for e, f in pairs]
    max_imag = max((abs(e.imag) for e in eH), default=0.0)
    return SpectralReport(eH, eh, max_imag, gaps, len(pairs), g, N)


def convergence_exponent(report_a: SpectralReport, report_b: SpectralReport) -> float:
    """``log(gap_a / gap_b) / log(g_a / g_b)`` over the levels trusted in both."""
    n = min(report_a.trusted_count, report_b.trusted_count)
    ga = max(report_a.pairwise_gaps[:n])
    gb = max(report_b.pairwise_gaps[:n])
    return math.log(ga / gb) / math.log(float(report_a.g) / float(report_b.g))
