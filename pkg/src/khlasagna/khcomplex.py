"""
Cube-of-resolutions complexes in framing-adapted (fr) gradings.

At every crossing ``X(i,j,k,l)`` bit 0 joins (i,l)(j,k) and bit 1 joins
(i,j)(k,l).  For a positive crossing bit 1 is the oriented smoothing, for a
negative one bit 0 is.  A vertex with ``r`` ones sits in

    t = r - n_minus,        q = (sum of circle degrees) - r + n_minus,

and the differential raises ``t`` by one.  Merge/split maps have q-degree
+1 in the leading term, so with this shift the undeformed differential is
q-homogeneous while deformation terms strictly lower q.  A positive kink
then shifts everything by q^-N t, a negative one by q^N t^-1.

For N = 1 the unoriented smoothing carries no state (there is no thick
edge in gl(1) webs), so only the oriented vertex survives.

Standard (std) degrees are related by ``(q_fr, t_fr) = (q_std - N w,
w - t_std)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .frobenius import FrobeniusData, specialize
from .linkdiag import PlanarDiagram, resolution_circles

__all__ = [
    "UnsupportedRank",
    "GradedChainComplex",
    "cube",
    "regrade_fr",
    "regrade_std",
    "framing_shift",
]


class UnsupportedRank(ValueError):
    """Raised when a cube is requested for a rank the engine cannot build."""


@dataclass
class GradedChainComplex:
    """Free complex with a homogeneous basis in every t-degree.

    ``qdeg[t][i]`` is the fr q-degree of the i-th basis element of ``C_t``;
    ``d[t]`` is the list of columns of ``C_t -> C_{t+1}`` as sparse dicts.
    """

    N: int
    writhe: int
    mode: str
    qdeg: dict
    d: dict
    labels: dict = field(default_factory=dict)
    algebra: FrobeniusData | None = None

    @property
    def tdegrees(self) -> list[int]:
        return sorted(t for t, qs in self.qdeg.items() if qs)

    def dim(self, t: int) -> int:
        return len(self.qdeg.get(t, ()))

    def differential(self, t: int) -> list[dict]:
        """Columns of ``C_t -> C_{t+1}`` (empty columns if absent)."""
        cols = self.d.get(t)
        if cols is None:
            return [{} for _ in range(self.dim(t))]
        return cols

    def check_d_squared(self) -> bool:
        for t in self.tdegrees:
            first = self.differential(t)
            second = self.differential(t + 1)
            for col in first:
                acc = {}
                for r, v in col.items():
                    for r2, w in second[r].items():
                        acc[r2] = acc.get(r2, 0) + v * w
                if any(x != 0 for x in acc.values()):
                    return False
        return True

    def filtration_violations(self) -> list[tuple[int, int, int]]:
        """Entries (t, row, col) whose target q exceeds the source q."""
        bad = []
        for t in self.tdegrees:
            qs, qt = self.qdeg[t], self.qdeg.get(t + 1, [])
            for c, col in enumerate(self.differential(t)):
                for r in col:
                    if qt[r] > qs[c]:
                        bad.append((t, r, c))
        return bad

    def is_graded(self) -> bool:
        """True when every nonzero entry preserves q."""
        for t in self.tdegrees:
            qs, qt = self.qdeg[t], self.qdeg.get(t + 1, [])
            for c, col in enumerate(self.differential(t)):
                for r in col:
                    if qt[r] != qs[c]:
                        return False
        return True

    def euler_characteristic(self, grading: str = "fr") -> dict:
        """Graded Euler characteristic as ``{q: coefficient}``."""
        chi = {}
        for t in self.tdegrees:
            for q in self.qdeg[t]:
                if grading == "std":
                    q, tt = q + self.N * self.writhe, self.writhe - t
                else:
                    tt = t
                chi[q] = chi.get(q, 0) + (-1) ** (tt % 2)
        return {q: v for q, v in sorted(chi.items()) if v}

    def map_coefficients(self, f, mode: str, algebra=None) -> "GradedChainComplex":
        d = {t: [{r: f(v) for r, v in col.items()} for col in cols] for t, cols in self.d.items()}
        d = {t: [{r: v for r, v in col.items() if v != 0} for col in cols] for t, cols in d.items()}
        return GradedChainComplex(self.N, self.writhe, mode, self.qdeg, d, self.labels, algebra)

    def specialize(self, values) -> "GradedChainComplex":
        """Substitute ``e_i -> values`` in an equivariant complex."""
        if self.mode != "equivariant":
            raise ValueError("only equivariant complexes can be specialized")
        alg = specialize(self.algebra, values) if self.algebra is not None else None
        mode = alg.mode if alg is not None else "rationals"
        if mode == "integers":
            f = lambda v: int(specialize(v, values))  # noqa: E731
        else:
            f = lambda v: specialize(v, values)  # noqa: E731
        return self.map_coefficients(f, mode, alg)

    def to_json(self) -> dict:
        out = {"N": self.N, "writhe": self.writhe, "mode": self.mode, "grading": "fr",
               "bases": [], "differentials": []}
        for t in self.tdegrees:
            out["bases"].append({"t": t, "q": list(self.qdeg[t])})
            trip = []
            for c, col in enumerate(self.differential(t)):
                for r, v in sorted(col.items()):
                    trip.append([r, c, str(v)])
            if trip:
                out["differentials"].append({"t": t, "entries": trip})
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _vertex_data(D, bits):
    circles = resolution_circles(D, bits)
    where = {}
    for idx, circ in enumerate(circles):
        for e in circ:
            where[e] = idx
    return circles, where


def cube(D: PlanarDiagram, A: FrobeniusData) -> GradedChainComplex:
    """Cube-of-resolutions complex of ``D`` over ``A`` in fr gradings."""
    N = A.N
    n = D.n_crossings
    if n and N not in (1, 2):
        raise UnsupportedRank("cube complexes with crossings need N in {1, 2}, got %d" % N)
    n_minus = D.n_minus
    zero = A.zero

    if N == 1:
        oriented = tuple(1 if b else 0 for b in D.over_lj)
        vertices = [oriented]
    else:
        vertices = list(product((0, 1), repeat=n))

    # per-vertex circles and basis offsets inside C_t
    info = {}
    qdeg, labels = {}, {}
    for v in vertices:
        r = sum(v)
        t = r - n_minus
        circles, where = _vertex_data(D, v)
        m = len(circles)
        offset = len(qdeg.setdefault(t, []))
        labels.setdefault(t, [])
        for exps in product(range(N), repeat=m):
            # mixed radix order: circle 0 varies slowest
            qdeg[t].append(sum(A.qdeg[e] for e in exps) - r + n_minus)
            labels[t].append((v, exps))
        info[v] = (t, circles, where, offset)

    def index(exps):
        idx = 0
        for e in exps:
            idx = idx * N + e
        return idx

    d = {t: [dict() for _ in qdeg[t]] for t in qdeg}
    if N == 2:
        for v in vertices:
            t, circles, where, offset = info[v]
            m = len(circles)
            n_edge = len(circles) - D.loops
            for c in range(n):
                if v[c]:
                    continue
                w = v[:c] + (1,) + v[c + 1:]
                t2, circles2, where2, offset2 = info[w]
                sign = -1 if sum(v[:c]) % 2 else 1
                i, j, k, l = D.crossings[c]
                # correspondence of untouched circles
                touched = {where[i], where[j]}
                touched2 = {where2[i], where2[k]}
                mapping = {}
                for idx in range(n_edge):
                    if idx in touched:
                        continue
                    e = min(circles[idx])
                    mapping[idx] = where2[e]
                n_edge2 = len(circles2) - D.loops
                for li in range(D.loops):
                    mapping[n_edge + li] = n_edge2 + li
                m2 = len(circles2)
                if len(touched) == 2:
                    a, b = where[i], where[j]
                    target = where2[i]
                    for exps in product(range(N), repeat=m):
                        col = d[t][offset + index(exps)]
                        for cc, coeff in A.mult[(exps[a], exps[b])].items():
                            new = [0] * m2
                            for src, dst in mapping.items():
                                new[dst] = exps[src]
                            new[target] = cc
                            row = offset2 + index(new)
                            col[row] = col.get(row, zero) + sign * coeff
                else:
                    a = where[i]
                    s1, s2 = where2[i], where2[k]
                    if s1 == s2:
                        raise ValueError("resolution change neither merges nor splits")
                    for exps in product(range(N), repeat=m):
                        col = d[t][offset + index(exps)]
                        for (x, y), coeff in A.comult[exps[a]].items():
                            new = [0] * m2
                            for src, dst in mapping.items():
                                new[dst] = exps[src]
                            new[s1], new[s2] = x, y
                            row = offset2 + index(new)
                            col[row] = col.get(row, zero) + sign * coeff
        for t in d:
            d[t] = [{r: val for r, val in col.items() if val != 0} for col in d[t]]
    return GradedChainComplex(N, D.writhe, A.mode, qdeg, d, labels, A)


def regrade_fr(H: dict, N: int, w: int) -> dict:
    """Std bidegrees ``{(q, t): x}`` to fr: ``(q - N w, w - t)``."""
    out = {}
    for (q, t), x in H.items():
        key = (q - N * w, w - t)
        out[key] = out.get(key, 0) + x
    return out


def regrade_std(H: dict, N: int, w: int) -> dict:
    """Inverse of :func:`regrade_fr`."""
    out = {}
    for (q, t), x in H.items():
        key = (q + N * w, w - t)
        out[key] = out.get(key, 0) + x
    return out


def framing_shift(N: int, df: int) -> tuple[int, int]:
    """fr bidegree shift ``(-N df, df)`` caused by changing the framing by df."""
    return -N * df, df
