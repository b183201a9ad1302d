"""Exact sparse Gauss-Jordan elimination over the Gaussian rationals.

The matrix is eliminated once; the row operations are recorded so that the
same system can then be solved for many right-hand sides, which is how the
order-by-order recursion uses it.
"""

from __future__ import annotations

from typing import Dict, Hashable, List, Mapping, Sequence, Tuple

from .algebra import ZERO, GaussianRational

Row = Dict[Hashable, GaussianRational]


class InconsistentSystem(ArithmeticError):
    """The right-hand side is not in the column space."""


def _axpy(target: Dict, source: Mapping, factor: GaussianRational) -> None:
    # target -= factor * source, in place, pruning zeros
    for k, v in source.items():
        w = target.get(k, ZERO) - factor * v
        if w:
            target[k] = w
        else:
            target.pop(k, None)


class ExactSolver:
    """Reduced row-echelon form of a sparse matrix with recorded row operations.

    ``rows`` maps a row label to ``{column: coefficient}``; ``columns`` fixes
    the pivot preference order (earlier columns are pivoted first, so later
    columns become the free variables).
    """

    def __init__(self, rows: Mapping[Hashable, Row], columns: Sequence[Hashable]):
        self.columns = list(columns)
        rank = {c: j for j, c in enumerate(self.columns)}
        work: List[Tuple[Row, Row]] = []
        self.row_labels = set()
        for label, row in rows.items():
            r = {c: v for c, v in row.items() if v}
            if r:
                work.append((r, {label: GaussianRational(1)}))
                self.row_labels.add(label)
        self.pivots: List[Tuple[Hashable, Row, Row]] = []  # (column, reduced row, transform)
        self.null_rows: List[Row] = []  # transforms of rows reduced to zero
        pending = work
        while pending:
            # pick the row whose best column ranks highest; keeps fill-in local
            best_i = min(range(len(pending)), key=lambda i: (min(rank[c] for c in pending[i][0]), len(pending[i][0])))
            row, tr = pending.pop(best_i)
            col = min(row, key=rank.__getitem__)
            inv = row[col].inverse()
            row = {c: v * inv for c, v in row.items()}
            tr = {c: v * inv for c, v in tr.items()}
            nxt = []
            for r2, t2 in pending:
                f = r2.get(col)
                if f:
                    _axpy(r2, row, f)
                    _axpy(t2, tr, f)
                if r2:
                    nxt.append((r2, t2))
                else:
                    self.null_rows.append(t2)
            for _, r2, t2 in self.pivots:
                f = r2.get(col)
                if f:
                    _axpy(r2, row, f)
                    _axpy(t2, tr, f)
            self.pivots.append((col, row, tr))
            pending = nxt
        self.pivot_columns = {c for c, _, _ in self.pivots}
        self.free_columns = [c for c in self.columns if c not in self.pivot_columns]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, rhs: Mapping[Hashable, GaussianRational]) -> Dict[Hashable, GaussianRational]:
        """One solution with every free variable set to zero."""
        for t in self.null_rows:
            s = sum((v * rhs[k] for k, v in t.items() if k in rhs), ZERO)
            if s:
                raise InconsistentSystem("right-hand side is not in the range of the operator")
        if any(v for k, v in rhs.items() if k not in self.row_labels):
            raise InconsistentSystem("right-hand side has components in rows the operator never reaches")
        out = {}
        for col, _, t in self.pivots:
            s = sum((v * rhs[k] for k, v in t.items() if k in rhs), ZERO)
            if s:
                out[col] = s
        return out

    def nullspace(self) -> List[Dict[Hashable, GaussianRational]]:
        """One basis vector per free column (that column set to 1)."""
        basis = []
        for free in self.free_columns:
            vec = {free: GaussianRational(1)}
            for col, row, _ in self.pivots:
                v = row.get(free)
                if v:
                    vec[col] = -v
            basis.append(vec)
        return basis
