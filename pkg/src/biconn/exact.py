"""Exact rational linear algebra.

Rows are eliminated fraction-free: every row is scaled to primitive integer
form and reduced by integer cross-multiplication, with the row content
divided out after each step.  Rows are stored sparsely since the equivariance
systems this package builds have a handful of nonzeros per row.  Pivots are
the first nonzero column, so bases come out in a reproducible order.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

SparseRow = dict[int, int]


def _primitive(row: dict[int, Fraction | int]) -> SparseRow:
    """Scale a rational row to coprime integers with positive leading entry."""
    row = {c: Fraction(v) for c, v in row.items() if v}
    if not row:
        return {}
    den = lcm(*(v.denominator for v in row.values()))
    ints = {c: int(v * den) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if ints[min(ints)] < 0:
        g = -g
    return {c: v // g for c, v in ints.items()}


class Echelon:
    """Incrementally built row echelon form over the integers.

    ``add`` reduces a new row against the current pivots and keeps it if it
    is independent.  Only leading entries are eliminated while streaming; the
    back-substitution to reduced form happens once, in :meth:`reduced`.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, SparseRow] = {}

    def add(self, row: dict[int, Fraction | int]) -> bool:
        r = _primitive(row)
        while r:
            lead = min(r)
            p = self.pivots.get(lead)
            if p is None:
                self.pivots[lead] = r
                return True
            a, b = p[lead], r[lead]
            out: dict[int, int] = {}
            for c in r.keys() | p.keys():
                v = a * r.get(c, 0) - b * p.get(c, 0)
                if v:
                    out[c] = v
            r = _primitive(out)
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduced(self) -> dict[int, dict[int, Fraction]]:
        """Reduced row echelon form: pivot column -> row with unit pivot."""
        rref: dict[int, dict[int, Fraction]] = {}
        for lead in sorted(self.pivots, reverse=True):
            row = {c: Fraction(v, self.pivots[lead][lead]) for c, v in self.pivots[lead].items()}
            for c in [c for c in row if c != lead and c in rref]:
                f = row.pop(c)
                for cc, vv in rref[c].items():
                    if cc == c:
                        continue
                    nv = row.get(cc, Fraction(0)) - f * vv
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
            rref[lead] = row
        return rref


def _sparse(rows: Iterable) -> Iterable[dict[int, Fraction]]:
    for row in rows:
        if isinstance(row, dict):
            yield row
        else:
            yield {j: v for j, v in enumerate(row) if v}


def echelon(rows: Iterable, ncols: int) -> Echelon:
    e = Echelon(ncols)
    for row in _sparse(rows):
        e.add(row)
    return e


def rank(rows: Iterable, ncols: int) -> int:
    return echelon(rows, ncols).rank


def nullspace(rows: Iterable, ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0}, one vector per free column in increasing order.

    Each basis vector has a 1 in its free column and 0 in the other free
    columns.
    """
    rref = echelon(rows, ncols).reduced()
    basis = []
    for f in range(ncols):
        if f in rref:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for lead, row in rref.items():
            if f in row:
                v[lead] = -row[f]
        basis.append(v)
    return basis


def solve(columns: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum_j c_j columns[j] == target``, or None.

    Free variables are set to zero.  ``columns`` are vectors of equal length.
    """
    k = len(columns)
    length = len(target)
    rows = []
    for i in range(length):
        row = {j: Fraction(columns[j][i]) for j in range(k) if columns[j][i]}
        if target[i]:
            row[k] = Fraction(target[i])
        if row:
            rows.append(row)
    rref = echelon(rows, k + 1).reduced()
    if k in rref:
        return None
    coeffs = [Fraction(0)] * k
    for lead, row in rref.items():
        coeffs[lead] = row.get(k, Fraction(0))
    return coeffs


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return [[sum((Fraction(row[t]) * b[t][j] for t in range(inner)), Fraction(0)) for j in range(cols)]
            for row in a]
