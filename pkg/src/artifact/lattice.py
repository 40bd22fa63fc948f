"""Exact solver for rational linear systems modulo the integers.

Solves A x ≡ t (mod Z^K) for rational x.  Each column is scaled to integer
entries, the integer matrix is brought to echelon form by unimodular row
operations (Euclid-style reductions, deterministic pivoting), and the
transform is kept.  The zero rows of the reduced matrix give a Z-basis of
the left kernel: the system is solvable iff every kernel row pairs with t
to an integer.  Solutions come from back substitution over Q with free
unknowns set to zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Hashable, Mapping, Sequence

F = Fraction


def _sort_key(row):
    return (type(row).__name__, row)


def _axpy(dst: dict, src: Mapping, scale: int):
    """dst -= scale * src, dropping zeros."""
    for k, v in src.items():
        nv = dst.get(k, 0) - scale * v
        if nv:
            dst[k] = nv
        else:
            dst.pop(k, None)


class ModOneSystem:
    """A fixed coefficient matrix, reduced once, solved for many targets."""

    def __init__(self, columns: Sequence[Mapping[Hashable, object]]):
        self.ncols = len(columns)
        self.scale = []
        int_cols = []
        for col in columns:
            col = {r: F(v) for r, v in col.items() if v}
            L = lcm(*(v.denominator for v in col.values())) if col else 1
            self.scale.append(L)
            int_cols.append({r: int(v * L) for r, v in col.items()})
        self.rows = sorted({r for col in int_cols for r in col}, key=_sort_key)
        self._row_set = set(self.rows)
        index = {r: n for n, r in enumerate(self.rows)}
        mat = [dict() for _ in self.rows]
        for j, col in enumerate(int_cols):
            for r, v in col.items():
                mat[index[r]][j] = v
        trans = [{n: 1} for n in range(len(self.rows))]
        self._reduce(mat, trans)

    def _reduce(self, mat, trans):
        free = list(range(len(mat)))
        pivots = []  # (column, row index)
        for c in range(self.ncols):
            while True:
                live = [n for n in free if mat[n].get(c)]
                if len(live) <= 1:
                    break
                p = min(live, key=lambda n: (abs(mat[n][c]), n))
                pv = mat[p][c]
                for n in live:
                    if n == p:
                        continue
                    qt = mat[n][c] // pv
                    _axpy(mat[n], mat[p], qt)
                    _axpy(trans[n], trans[p], qt)
            if live:
                p = live[0]
                pivots.append((c, p))
                free.remove(p)
        self._pivots = [(c, mat[p], trans[p]) for c, p in pivots]
        self._kernel = [trans[n] for n in free]

    def _pair(self, urow: Mapping[int, int], target: Mapping) -> Fraction:
        return sum((v * target.get(self.rows[n], 0) for n, v in urow.items()), F(0))

    def solvable(self, target: Mapping) -> bool:
        return self.solve(target) is not None

    def solve(self, target: Mapping[Hashable, object]) -> list[Fraction] | None:
        target = {r: F(v) for r, v in target.items() if v}
        for r, v in target.items():
            if r not in self._row_set and v.denominator != 1:
                return None
        for urow in self._kernel:
            if self._pair(urow, target).denominator != 1:
                return None
        y = [F(0)] * self.ncols
        for c, row, urow in reversed(self._pivots):
            rhs = self._pair(urow, target)
            for c2, v in row.items():
                if c2 != c:
                    rhs -= v * y[c2]
            y[c] = rhs / row[c]
        return [yj * L for yj, L in zip(y, self.scale)]
