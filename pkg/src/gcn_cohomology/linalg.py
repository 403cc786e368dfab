"""Exact sparse linear algebra over Q.

Matrices are stored column-wise as ``{row: Fraction}`` dicts.  Elimination is
incremental: columns are inserted one at a time into a fully reduced echelon
basis whose pivot is always the smallest surviving row index, so ranks,
kernels and solutions are independent of dictionary ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

Column = Dict[int, Fraction]


def _axpy(target: Column, coef: Fraction, src: Column) -> None:
    """target += coef * src, in place, dropping zeros."""
    for r, v in src.items():
        nv = target.get(r, 0) + coef * v
        if nv:
            target[r] = nv
        else:
            target.pop(r, None)


class SparseRationalMatrix:
    def __init__(self, n_rows: int, columns: Optional[Sequence[Column]] = None):
        self.n_rows = n_rows
        self.columns: List[Column] = []
        for col in columns or []:
            self.append(col)

    def append(self, col: Column) -> None:
        clean = {}
        for r, v in col.items():
            if not 0 <= r < self.n_rows:
                raise IndexError("row %d outside 0..%d" % (r, self.n_rows - 1))
            if v:
                clean[r] = Fraction(v)
        self.columns.append(clean)

    @property
    def n_cols(self) -> int:
        return len(self.columns)

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def matvec(self, x: Dict[int, Fraction]) -> Column:
        out: Column = {}
        for j, coef in x.items():
            if coef:
                _axpy(out, Fraction(coef), self.columns[j])
        return out

    def left_apply(self, y: Column) -> List[Fraction]:
        """y^T M as a dense list over columns."""
        return [sum((y.get(r, 0) * v for r, v in col.items()), Fraction(0)) for col in self.columns]

    def compose(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        """self @ other."""
        if other.n_rows != self.n_cols:
            raise ValueError("shape mismatch")
        return SparseRationalMatrix(self.n_rows, [self.matvec(c) for c in other.columns])

    def to_dense(self) -> List[List[Fraction]]:
        rows = [[Fraction(0)] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            for r, v in col.items():
                rows[r][j] = v
        return rows


class Echelon:
    """Fully reduced column echelon form built one column at a time."""

    def __init__(self):
        self.pivot_of: Dict[int, int] = {}  # pivot row -> slot
        self.cols: List[Column] = []  # reduced columns, 1 at their pivot row
        self.combos: List[Column] = []  # each reduced column as a combination of inputs
        self.kernel: List[Column] = []
        self.n_inserted = 0

    @property
    def rank(self) -> int:
        return len(self.cols)

    def reduce(self, col: Column, combo: Optional[Column] = None):
        v = dict(col)
        cmb = dict(combo) if combo is not None else None
        for r in sorted(r for r in col if r in self.pivot_of):
            c = v.get(r)
            if not c:
                continue
            k = self.pivot_of[r]
            _axpy(v, -c, self.cols[k])
            if cmb is not None:
                _axpy(cmb, -c, self.combos[k])
        # pivot columns are zero on other pivot rows, so one pass suffices
        return v, cmb

    def insert(self, col: Column) -> bool:
        """Add a column; returns True when it raised the rank."""
        idx = self.n_inserted
        self.n_inserted += 1
        v, cmb = self.reduce(col, {idx: Fraction(1)})
        if not v:
            self.kernel.append(cmb)
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {r: x * inv for r, x in v.items()}
        cmb = {r: x * inv for r, x in cmb.items()}
        for k, other in enumerate(self.cols):
            c = other.get(p)
            if c:
                _axpy(other, -c, v)
                _axpy(self.combos[k], -c, cmb)
        self.pivot_of[p] = len(self.cols)
        self.cols.append(v)
        self.combos.append(cmb)
        return True


@dataclass
class SolveResult:
    feasible: bool
    solution: Optional[Dict[int, Fraction]] = None
    # infeasible: y with y^T M = 0 and y . c != 0
    certificate: Optional[Column] = None
    certificate_value: Optional[Fraction] = None


def rank(m: SparseRationalMatrix) -> int:
    e = Echelon()
    for col in m.columns:
        e.insert(col)
    return e.rank


def kernel_and_rank(m: SparseRationalMatrix):
    e = Echelon()
    for col in m.columns:
        e.insert(col)
    return e.kernel, e.rank


def solve(m: SparseRationalMatrix, c: Column) -> SolveResult:
    """Solve M x = c exactly, or certify that no solution exists."""
    e = Echelon()
    for col in m.columns:
        e.insert(col)
    c = {r: Fraction(v) for r, v in c.items() if v}
    residual, _ = e.reduce(c)
    if not residual:
        x: Column = {}
        for r, slot in e.pivot_of.items():
            coef = c.get(r)
            if coef:
                _axpy(x, coef, e.combos[slot])
        return SolveResult(True, solution=x)
    rho = min(residual)
    y: Column = {rho: Fraction(1)}
    for r, slot in e.pivot_of.items():
        pk = e.cols[slot].get(rho)
        if pk:
            y[r] = y.get(r, 0) - pk
    return SolveResult(False, certificate=y, certificate_value=residual[rho])


def check_certificate(m: SparseRationalMatrix, c: Column, y: Column) -> bool:
    """True when y^T M = 0 and y . c != 0."""
    if any(m.left_apply(y)):
        return False
    return sum((y.get(r, 0) * Fraction(v) for r, v in c.items()), Fraction(0)) != 0
