from fractions import Fraction as F

import pytest

from starmetric.algebra import GaussianRational as Q
from starmetric.linsolve import ExactSolver, InconsistentSystem


def _apply(rows, sol):
    return {r: sum((c * sol.get(k, 0) for k, c in row.items()), Q(0)) for r, row in rows.items()}


def test_square_system():
    rows = {"r1": {"a": Q(2), "b": Q(1)}, "r2": {"a": Q(1), "b": Q(0, 1)}}
    s = ExactSolver(rows, ["a", "b"])
    rhs = {"r1": Q(3), "r2": Q(F(1, 2), 1)}
    sol = s.solve(rhs)
    assert _apply(rows, sol) == rhs
    assert s.rank == 2 and s.nullspace() == []


def test_underdetermined_prefers_early_columns():
    rows = {"r": {"a": Q(1), "b": Q(2), "c": Q(3)}}
    s = ExactSolver(rows, ["a", "b", "c"])
    assert s.free_columns == ["b", "c"]
    assert s.solve({"r": Q(6)}) == {"a": Q(6)}
    for v in s.nullspace():
        assert _apply(rows, v) == {"r": Q(0)}


def test_inconsistent():
    rows = {"r1": {"a": Q(1)}, "r2": {"a": Q(2)}}
    s = ExactSolver(rows, ["a"])
    with pytest.raises(InconsistentSystem):
        s.solve({"r1": Q(1), "r2": Q(1)})
    with pytest.raises(InconsistentSystem):
        s.solve({"elsewhere": Q(1)})


def test_repeated_right_hand_sides():
    rows = {i: {j: Q(F(1, i + j + 1)) for j in range(4)} for i in range(4)}  # Hilbert matrix
    s = ExactSolver(rows, list(range(4)))
    for k in range(4):
        rhs = {i: Q(int(i == k)) for i in range(4)}
        assert _apply(rows, s.solve(rhs)) == rhs
