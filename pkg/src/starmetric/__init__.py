"""Exact phase-space methods for pseudo-Hermitian Hamiltonians.

Builds the metric ``eta^2``, the similarity map ``eta`` and the Hermitian
counterpart ``h`` of ``H = h0 + i g h1`` with Moyal star products, exactly
when a closed form exists and otherwise as a series in g.
"""

from .algebra import (
    ExpWeightedPoly,
    GaussianRational,
    GSeries,
    HamiltonianSplit,
    PhaseMonomial,
    PhasePoly,
    conjugate_symbol,
    diff_p,
    diff_x,
    parse_poly,
)
from .expr import ExprSyntaxError, LoweringError, parse, to_hamiltonian, to_text
from .intertwiner import (
    MetricSolution,
    NoExactSolution,
    NormalizationObstruction,
    OddOrderResidual,
    Unsolvable,
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
from .ordering import (
    OperatorPoly,
    hermitian_check,
    op_adjoint,
    op_mul,
    standard_quantize,
    standard_symbol,
    symmetric_product,
    symmetric_terms,
    weyl_quantize,
    weyl_symbol,
)
from .star import STANDARD, STAR, series_mul, star, star_moyal, star_standard

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
