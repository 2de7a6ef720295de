"""Integer Smith normal form of sparse matrices.

Elimination runs in two phases over a row-dict copy of the matrix:

1. unit pivots. A ``+-1`` pivot lets us drop its row and column after
   clearing the column by row operations (the Schur complement stays
   integral). Columns are swept shortest first, each pivoting on its unit
   entry in the shortest row; units created by fill-in are then picked up
   greedily by Markowitz cost ``(r-1)(c-1)`` from a lazy heap;
2. the non-unit residue, reduced with minimal-absolute-value pivots and
   division with remainder on both rows and columns.

All arithmetic uses Python ints, so there is no overflow. The diagonal
collected this way is then normalised into a divisibility chain.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd

from ..sparse import SparseIntMatrix


@dataclass(frozen=True)
class SmithForm:
    divisors: tuple

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def torsion(self) -> tuple:
        """Invariant factors greater than one."""
        return tuple(d for d in self.divisors if d > 1)


class _Eliminator:
    def __init__(self, m: SparseIntMatrix):
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set] = {}
        for c, col in enumerate(m.cols):
            if col:
                self.cols[c] = set(col)
            for r, v in col.items():
                self.rows.setdefault(r, {})[c] = v
        self.diagonal: list[int] = []

    def _cost(self, r, c):
        return (len(self.rows[r]) - 1) * (len(self.cols[c]) - 1)

    def _axpy_row(self, target: int, f: int, prow: dict, heap=None):
        """rows[target] -= f * prow, keeping the column index in sync."""
        row = self.rows[target]
        cols = self.cols
        for c, v in prow.items():
            nv = row.get(c, 0) - f * v
            if nv:
                if c not in row:
                    cols[c].add(target)
                row[c] = nv
                if heap is not None and (nv == 1 or nv == -1):
                    heapq.heappush(heap, (0, target, c))
            else:
                del row[c]
                cols[c].discard(target)
        if not row:
            del self.rows[target]

    def _drop(self, r: int, c: int):
        prow = self.rows.pop(r)
        for cc in prow:
            s = self.cols[cc]
            s.discard(r)
            if not s:
                del self.cols[cc]
        self.cols.pop(c, None)

    def _pivot_unit(self, r: int, c: int, heap=None):
        rows = self.rows
        prow = rows[r]
        p = prow[c]
        for r2 in list(self.cols[c]):
            if r2 != r:
                self._axpy_row(r2, rows[r2][c] * p, prow, heap)
        self._drop(r, c)
        self.diagonal.append(1)

    def column_sweep(self):
        rows, cols = self.rows, self.cols
        for c in sorted(cols, key=lambda c: len(cols[c])):
            col = cols.get(c)
            if not col:
                continue
            best, best_len = None, 0
            for r in col:
                v = rows[r][c]
                if (v == 1 or v == -1) and (best is None or len(rows[r]) < best_len):
                    best, best_len = r, len(rows[r])
            if best is not None:
                self._pivot_unit(best, c)

    def unit_phase(self):
        rows = self.rows
        heap = [(0, r, c) for r, row in rows.items() for c, v in row.items() if v == 1 or v == -1]
        heapq.heapify(heap)
        while heap:
            cost, r, c = heapq.heappop(heap)
            row = rows.get(r)
            if row is None:
                continue
            p = row.get(c)
            if p is None or (p != 1 and p != -1):
                continue
            actual = self._cost(r, c)
            if actual > cost:
                heapq.heappush(heap, (actual, r, c))
                continue
            self._pivot_unit(r, c, heap)

    def general_phase(self):
        rows, cols = self.rows, self.cols
        while rows:
            r, c = min(((r, c) for r, row in rows.items() for c in row),
                       key=lambda rc: (abs(rows[rc[0]][rc[1]]), len(rows[rc[0]]) * len(cols[rc[1]])))
            while True:
                p = rows[r][c]
                # clear column c with row operations
                dirty = False
                for r2 in list(cols[c]):
                    if r2 == r:
                        continue
                    q = _nearest_quotient(rows[r2][c], p)
                    if q:
                        self._axpy_row(r2, q, rows[r])
                    if r2 in rows and c in rows[r2]:
                        dirty = True
                if dirty:
                    r = min((x for x in cols[c]), key=lambda x: abs(rows[x][c]))
                    continue
                # column c is now p alone; column ops only touch row r
                row = rows[r]
                for c2 in list(row):
                    if c2 == c:
                        continue
                    q = _nearest_quotient(row[c2], p)
                    nv = row[c2] - q * p
                    if nv:
                        row[c2] = nv
                    else:
                        del row[c2]
                        cols[c2].discard(r)
                        if not cols[c2]:
                            del cols[c2]
                if len(row) > 1:
                    c = min((x for x in row if x != c), key=lambda x: abs(row[x]))
                    continue
                self.diagonal.append(abs(p))
                self._drop(r, c)
                break


def _nearest_quotient(a: int, b: int) -> int:
    q, rem = divmod(a, b)
    if 2 * abs(rem) > abs(b):
        q += 1
    return q


def _chain(values: list[int]) -> list[int]:
    """Turn a diagonal into invariant factors with ``d_i | d_{i+1}``."""
    vals = sorted(values)
    n = len(vals)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = vals[i], vals[j]
            if b % a:
                g = gcd(a, b)
                vals[i], vals[j] = g, a // g * b
    return vals


def smith_normal_form(m: SparseIntMatrix) -> SmithForm:
    """Invariant factors of ``m`` (empty tuple for a zero or empty matrix)."""
    e = _Eliminator(m)
    e.column_sweep()
    e.unit_phase()
    units = len(e.diagonal)
    e.general_phase()
    rest = _chain(e.diagonal[units:])
    return SmithForm(tuple([1] * units + rest))


def rank_mod_p(m: SparseIntMatrix, p: int = 2_147_483_647) -> int:
    """Rank over GF(p). Diagnostic only."""
    pivots: dict[int, dict[int, int]] = {}
    for col in m.cols:
        vec = {r: v % p for r, v in col.items() if v % p}
        while vec:
            lead = min(vec)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(vec[lead], p - 2, p)
                pivots[lead] = {r: v * inv % p for r, v in vec.items()}
                break
            f = vec[lead]
            for r, v in piv.items():
                nv = (vec.get(r, 0) - f * v) % p
                if nv:
                    vec[r] = nv
                else:
                    vec.pop(r, None)
    return len(pivots)


def rational_rank(m: SparseIntMatrix) -> int:
    """Rank over Q by fraction-free column elimination.

    Independent of :func:`smith_normal_form`: no unimodular operations, a
    different pivot rule, and rows scaled rather than divided.
    """
    pivots: dict[int, dict[int, int]] = {}
    for col in m.cols:
        vec = dict(col)
        while vec:
            lead = min(vec)
            piv = pivots.get(lead)
            if piv is None:
                g = 0
                for v in vec.values():
                    g = gcd(g, v)
                pivots[lead] = {r: v // g for r, v in vec.items()}
                break
            a, b = vec[lead], piv[lead]
            acc = {r: b * v for r, v in vec.items()}
            for r, v in piv.items():
                nv = acc.get(r, 0) - a * v
                if nv:
                    acc[r] = nv
                else:
                    acc.pop(r, None)
            g = 0
            for v in acc.values():
                g = gcd(g, v)
            vec = {r: v // g for r, v in acc.items()} if g > 1 else acc
    return len(pivots)
