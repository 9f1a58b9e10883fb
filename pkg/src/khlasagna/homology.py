"""
Exact homology of fr-graded cube complexes.

Integral homology uses a Smith-type diagonalization of every q-block of
the differential; rational and filtered homology only need ranks.  For a
deformed complex the q-filtration ``F_p C = span{basis with q <= p}`` is a
subcomplex, and

    dim im(H_t(F_p C) -> H_t(C)) = dim(Z_t & F_p) - dim(B_t & F_p)

with ``dim(Z_t & F_p) = #(q <= p) - rank(d_t on those columns)`` and
``dim(B_t & F_p) = rank(d_{t-1}) - rank(rows q > p of d_{t-1})``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .frobenius import DeformationMultiset, unknot_algebra
from .khcomplex import GradedChainComplex, cube
from .linalg import invariant_factors, rank, smith_diagonal

__all__ = [
    "BigradedHomology",
    "FilteredHomology",
    "NotFiltered",
    "integral_homology",
    "rational_homology",
    "filtered_homology",
    "q_min",
    "nontorsion_witness",
    "default_candidates",
    "deformed_homology",
]


class NotFiltered(ValueError):
    """The differential raises the q-degree somewhere."""


@dataclass
class BigradedHomology:
    """Free ranks per fr bidegree and torsion per (q, t).

    Torsion is stored where the fr complex produces it (``t_fr``); its std
    placement is ``t_std = w - t_fr + 1``, i.e. the usual cohomological
    position in standard conventions.
    """

    N: int
    writhe: int
    free: dict
    torsion: list = field(default_factory=list)

    def dims_by_t(self) -> dict:
        out = {}
        for (q, t), r in self.free.items():
            out[t] = out.get(t, 0) + r
        return dict(sorted(out.items()))

    def std(self) -> dict:
        w, N = self.writhe, self.N
        return {(q + N * w, w - t): r for (q, t), r in self.free.items()}

    def poincare(self, grading: str = "fr") -> dict:
        return dict(sorted(self.std().items() if grading == "std" else self.free.items()))

    def to_json(self, grading: str = "fr") -> dict:
        free = self.poincare(grading)
        tors = []
        for q, t, orders in self.torsion:
            entry = {"q": q + self.N * self.writhe, "t": self.writhe - t + 1,
                     "orders": list(orders), "placement": "std", "t_fr": t, "q_fr": q}
            tors.append(entry)
        tors.sort(key=lambda e: (e["t"], e["q"]))
        return {
            "N": self.N,
            "writhe": self.writhe,
            "grading": grading,
            "free": [{"q": q, "t": t, "rank": r} for (q, t), r in sorted(free.items(), key=lambda x: (x[0][1], x[0][0]))],
            "torsion": tors,
        }


@dataclass
class FilteredHomology:
    """Per t: total dimension and filtration jumps ``[(p, dim F_p H_t)]``."""

    N: int
    writhe: int
    dims: dict
    jumps: dict

    def dims_by_t(self) -> dict:
        return {t: d for t, d in sorted(self.dims.items()) if d}

    def total(self) -> int:
        return sum(self.dims.values())

    def to_json(self, grading: str = "fr") -> dict:
        if grading == "std":
            # t reverses, so the filtration data is relabelled but unchanged
            dq, tmap = self.N * self.writhe, (lambda t: self.writhe - t)
        else:
            dq, tmap = 0, (lambda t: t)
        dims = sorted((tmap(t), d) for t, d in self.dims.items() if d)
        jumps = sorted((tmap(t), js) for t, js in self.jumps.items() if js)
        return {
            "N": self.N,
            "writhe": self.writhe,
            "grading": grading,
            "dims": [{"t": t, "dim": d} for t, d in dims],
            "filtration": [{"t": t, "jumps": [[p + dq, x] for p, x in js]} for t, js in jumps],
            "qmin": [{"t": t, "value": js[0][0] + dq} for t, js in jumps],
        }


def _block(cols, qsrc, qtgt, q):
    """Restrict columns with source degree q to rows with target degree q."""
    out = []
    for c, col in enumerate(cols):
        if qsrc[c] == q:
            out.append({r: v for r, v in col.items() if qtgt[r] == q})
    return out


def integral_homology(C: GradedChainComplex) -> BigradedHomology:
    """Free ranks and torsion of an integral, q-graded complex."""
    if C.mode != "integers":
        raise ValueError("integral homology needs an integer complex")
    if not C.is_graded():
        raise ValueError("integral homology needs a q-graded complex")
    diag = {}
    for t in C.tdegrees:
        qs, qt = C.qdeg[t], C.qdeg.get(t + 1, [])
        cols = C.differential(t)
        for q in sorted(set(qs)):
            diag[(q, t)] = smith_diagonal(_block(cols, qs, qt, q))
    free, torsion = {}, []
    for t in C.tdegrees:
        for q in sorted(set(C.qdeg[t])):
            n = C.qdeg[t].count(q)
            out_rank = len(diag.get((q, t), []))
            incoming = diag.get((q, t - 1), [])
            r = n - out_rank - len(incoming)
            if r:
                free[(q, t)] = r
            orders = invariant_factors(incoming)
            if orders:
                torsion.append((q, t, orders))
    return BigradedHomology(C.N, C.writhe, free, torsion)


def rational_homology(C: GradedChainComplex) -> BigradedHomology:
    """Dimensions over Q per (q, t) of a q-graded complex."""
    if not C.is_graded():
        raise ValueError("bigraded homology needs a q-graded complex; use filtered_homology")
    ranks = {}
    for t in C.tdegrees:
        qs, qt = C.qdeg[t], C.qdeg.get(t + 1, [])
        cols = C.differential(t)
        for q in sorted(set(qs)):
            ranks[(q, t)] = rank(_block(cols, qs, qt, q))
    free = {}
    for t in C.tdegrees:
        for q in sorted(set(C.qdeg[t])):
            r = C.qdeg[t].count(q) - ranks.get((q, t), 0) - ranks.get((q, t - 1), 0)
            if r:
                free[(q, t)] = r
    return BigradedHomology(C.N, C.writhe, free)


def filtered_homology(C: GradedChainComplex, tdegrees=None) -> FilteredHomology:
    """Dimensions and q-filtration of the homology of a filtered complex."""
    bad = C.filtration_violations()
    if bad:
        raise NotFiltered("differential raises q at %d entries, e.g. %r" % (len(bad), bad[0]))
    wanted = C.tdegrees if tdegrees is None else [t for t in tdegrees]
    dims, jumps = {}, {}
    for t in wanted:
        qs = C.qdeg.get(t, [])
        if not qs:
            dims[t], jumps[t] = 0, []
            continue
        out_cols = C.differential(t)
        in_cols = C.differential(t - 1) if C.dim(t - 1) else []
        rank_in = rank(in_cols)
        total = len(qs) - rank(out_cols) - rank_in
        dims[t] = total
        js = []
        prev = 0
        for p in sorted(set(qs)):
            keep = [col for c, col in enumerate(out_cols) if qs[c] <= p]
            z = sum(1 for q in qs if q <= p) - rank(keep)
            upper = [{r: v for r, v in col.items() if qs[r] > p} for col in in_cols]
            b = rank_in - rank(upper)
            dim_p = z - b
            if dim_p != prev:
                js.append((p, dim_p))
                prev = dim_p
            if dim_p == total:
                break
        jumps[t] = js
    return FilteredHomology(C.N, C.writhe, dims, jumps)


def q_min(H: FilteredHomology, t0: int):
    """Lowest filtration level of a nonzero class in degree t0, or None."""
    js = H.jumps.get(t0)
    if not js:
        return None
    return js[0][0]


def deformed_homology(D, sigma, tdegrees=None) -> FilteredHomology:
    if not isinstance(sigma, DeformationMultiset):
        sigma = DeformationMultiset(sigma)
    A = unknot_algebra(sigma.N, "rationals", sigma)
    return filtered_homology(cube(D, A), tdegrees)


def default_candidates(N: int = 2, extra: int = 3, seed: int = 0) -> list[DeformationMultiset]:
    """``{0,1}, {0,1,2}, ...`` truncated to size N plus a few random sets."""
    cands = [DeformationMultiset(range(N))]
    rng = random.Random(seed)
    while len(cands) < 1 + extra:
        vals = set()
        while len(vals) < N:
            vals.add(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        cand = DeformationMultiset(sorted(vals))
        if cand not in cands:
            cands.append(cand)
    return cands


def nontorsion_witness(D, t0: int, candidates=None):
    """First multiplicity-free Σ with nonzero deformed homology at t0.

    Returns ``(sigma, q_min)`` or None.  A witness certifies that the
    equivariant group in degree t0 is not torsion; None proves nothing.
    """
    if candidates is None:
        candidates = default_candidates(2)
    for sigma in candidates:
        if not isinstance(sigma, DeformationMultiset):
            sigma = DeformationMultiset(sigma)
        if any(m != 1 for m in sigma.multiplicities):
            raise ValueError("witness candidates must have all multiplicities 1")
        H = deformed_homology(D, sigma, [t0])
        if H.dims.get(t0, 0):
            return sigma, q_min(H, t0)
    return None
