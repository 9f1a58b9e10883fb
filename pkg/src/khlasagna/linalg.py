"""
Sparse exact elimination over Z and Q.

Matrices are given column-wise: a list of ``{row: value}`` dicts, values
``int`` or ``Fraction``.  Everything is exact; Python integers are unbounded
so nothing overflows.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd

__all__ = ["rank", "smith_diagonal", "invariant_factors", "integer_columns"]


def _lcm(a, b):
    return a * b // gcd(a, b)


def integer_columns(columns):
    """Scale every column by the lcm of its denominators (rank-preserving)."""
    out = []
    for col in columns:
        den = 1
        for v in col.values():
            if isinstance(v, Fraction):
                den = _lcm(den, v.denominator)
        out.append({r: int(v * den) for r, v in col.items() if v != 0})
    return out


def _to_rows(columns, integer=True):
    rows = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v != 0:
                rows.setdefault(r, {})[c] = v
    return rows


def rank(columns) -> int:
    """Rank over Q by fraction-free elimination with sparse pivoting."""
    rows = _to_rows(integer_columns(columns))
    colidx = {}
    for r, row in rows.items():
        for c in row:
            colidx.setdefault(c, set()).add(r)
    rk = 0
    # lazy heap of (row length, row); stale entries are skipped
    heap = [(len(row), r) for r, row in rows.items()]
    heapq.heapify(heap)
    while rows:
        # shortest row, then its smallest entry in the sparsest column
        length, r = heapq.heappop(heap)
        if r not in rows or len(rows[r]) != length:
            continue
        row = rows.pop(r)
        c = min(row, key=lambda k: (abs(row[k]), len(colidx[k]), k))
        p = row[c]
        for k in row:
            colidx[k].discard(r)
        rk += 1
        for r2 in list(colidx[c]):
            other = rows[r2]
            a = other[c]
            g = gcd(p, a)
            mp, ma = p // g, a // g
            new = {}
            for k, v in other.items():
                new[k] = v * mp
            for k, v in row.items():
                new[k] = new.get(k, 0) - ma * v
            content = 0
            for k in list(new):
                if new[k] == 0:
                    del new[k]
                else:
                    content = gcd(content, new[k])
            for k in other:
                if k not in new:
                    colidx[k].discard(r2)
            for k in new:
                colidx.setdefault(k, set()).add(r2)
            if content > 1:
                new = {k: v // content for k, v in new.items()}
            if new:
                rows[r2] = new
                heapq.heappush(heap, (len(new), r2))
            else:
                del rows[r2]
        colidx.pop(c, None)
    return rk


def smith_diagonal(columns) -> list[int]:
    """Nonzero diagonal entries (absolute values) of a diagonalization over Z.

    Only unimodular row and column operations are used, so the cokernel of
    the matrix is ``Z^(rows - len) + sum Z/d``.  Pivots are chosen with
    minimal magnitude; non-unit pivots are reduced Euclid-style.
    """
    rows = _to_rows(columns)
    for row in rows.values():
        for v in row.values():
            if isinstance(v, Fraction) and v.denominator != 1:
                raise ValueError("smith_diagonal needs integer entries")
    rows = {r: {c: int(v) for c, v in row.items()} for r, row in rows.items()}
    colidx = {}
    for r, row in rows.items():
        for c in row:
            colidx.setdefault(c, set()).add(r)
    diag = []

    def row_update(r2, r, q):
        # rows[r2] -= q * rows[r]
        other = rows[r2]
        for k, v in rows[r].items():
            nv = other.get(k, 0) - q * v
            if nv:
                if k not in other:
                    colidx.setdefault(k, set()).add(r2)
                other[k] = nv
            elif k in other:
                del other[k]
                colidx[k].discard(r2)
        if not other:
            del rows[r2]

    while rows:
        r = min(rows, key=lambda x: (min(abs(v) for v in rows[x].values()), len(rows[x]), x))
        row = rows[r]
        c = min(row, key=lambda k: (abs(row[k]), len(colidx[k]), k))
        while True:
            p = rows[r][c]
            # clear column c below/above the pivot by row operations
            smaller = None
            for r2 in sorted(colidx[c] - {r}):
                a = rows[r2][c]
                q = a // p
                if q:
                    row_update(r2, r, q)
                if r2 in rows and c in rows[r2]:
                    rem = rows[r2][c]
                    if smaller is None or abs(rem) < abs(rows[smaller][c]):
                        smaller = r2
            if smaller is not None:
                r = smaller
                continue
            # column c is now zero apart from the pivot; clear row r with
            # column operations, which only touch row r
            row = rows[r]
            best = None
            for k in list(row):
                if k == c:
                    continue
                rem = row[k] - (row[k] // p) * p
                if rem:
                    row[k] = rem
                    if best is None or abs(rem) < abs(row[best]):
                        best = k
                else:
                    del row[k]
                    colidx[k].discard(r)
            if best is not None:
                # the remainder becomes the new pivot; column c still has
                # only the old pivot entry, so column ops remain local
                c = best
                continue
            break
        diag.append(abs(rows[r][c]))
        colidx[c].discard(r)
        del rows[r]
    return diag


def invariant_factors(diagonal) -> list[int]:
    """Non-unit invariant factors ``d_1 | d_2 | ...`` of a diagonal matrix."""
    ds = sorted(d for d in diagonal if d != 1)
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            g = gcd(ds[i], ds[j])
            ds[i], ds[j] = g, ds[i] * ds[j] // g
    return [d for d in ds if d != 1]
