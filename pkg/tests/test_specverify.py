from fractions import Fraction as F

import numpy as np
import pytest

from starmetric.algebra import I, GSeries, PhasePoly
from starmetric.ordering import OperatorPoly, op_adjoint, op_commutator, weyl_quantize
from starmetric.specverify import (
    DimensionTooSmall,
    isospectral_check,
    ladder_matrices,
    matrix_of,
    matrix_of_symbol,
    truncated_symbol,
)

X, P = OperatorPoly.X(), OperatorPoly.P()
x, p = PhasePoly.x(), PhasePoly.p()


def test_ladder_commutator():
    xm, pm = ladder_matrices(12)
    c = xm @ pm - pm @ xm
    assert np.allclose(c[:11, :11], 1j * np.eye(11))


def test_x_squared_diagonal():
    m = matrix_of(X**2, 20).entries
    assert np.allclose(np.diag(m), [(2 * k + 1) / 2 for k in range(20)])


def test_oscillator_levels():
    m = matrix_of_symbol((p**2 + x**2) / 2, 40).entries
    ev = np.sort(np.linalg.eigvalsh(m))[:10]
    assert np.allclose(ev, np.arange(10) + 0.5)


def test_commutator_identity():
    lhs = matrix_of(op_commutator(X**2, P**2), 30).entries
    rhs = matrix_of((P * X).scale(4 * I) - 2, 30).entries
    assert np.allclose(lhs, rhs, atol=1e-10)


def test_adjoint_is_conjugate_transpose():
    A = P**2 * X + (X**3).scale(I) - P
    assert np.allclose(matrix_of(op_adjoint(A), 25).entries, matrix_of(A, 25).entries.conj().T)


def test_dimension_guard():
    with pytest.raises(DimensionTooSmall):
        matrix_of(X**5, 6)


def test_truncated_symbol():
    h = GSeries([x, p, x * p], 2)
    assert truncated_symbol(h, F(1, 2), 1) == x + p / 2


def test_cubic_at_zero_coupling():
    h0 = weyl_quantize((p**2 + x**2) / 2)
    report = isospectral_check(h0, h0, 60, g=F(0))
    assert report.trusted_count == 15
    assert np.allclose([e.real for e in report.eigenvalues_H], np.arange(15) + 0.5)
    assert report.max_imag < 1e-10 and report.max_gap < 1e-10
    assert "trusted levels = 15" in report.to_text()
