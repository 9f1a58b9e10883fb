"""
Grading calculus for surfaces in 4-manifolds, genus bounds, homological
diversity, the gl(1) skein module and the coloring decomposition of
deformed homology.

Second homology is modelled by its free part only: an integer lattice with
a symmetric intersection matrix ``Q`` and an offset ``alpha0`` that fixes
the torsor of classes bounding the link.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import floor

from .frobenius import DeformationMultiset, unknot_algebra
from .homology import deformed_homology, rational_homology
from .khcomplex import UnsupportedRank, cube
from .linkdiag import PlanarDiagram, components, seifert_data, sublink

__all__ = [
    "FourManifoldDatum",
    "SurfaceDatum",
    "surface_tridegree",
    "genus_bound",
    "is_homologically_diverse",
    "gl1_skein_tridegree",
    "predict_decomposition",
    "verify_decomposition",
    "DecompositionReport",
    "cable_invariants",
    "s2xd2_model",
    "qmin_for_positive_diagram",
    "qmin_for_negative_diagram",
    "colorings",
    "coloring_contributions",
    "positive_diagram_check",
]


@dataclass(frozen=True)
class FourManifoldDatum:
    """Intersection form on the free part of H_2(W) and a torsor offset."""

    Q: tuple
    alpha0: tuple = ()

    def __post_init__(self):
        Q = tuple(tuple(int(x) for x in row) for row in self.Q)
        b2 = len(Q)
        if any(len(row) != b2 for row in Q):
            raise ValueError("intersection matrix must be square")
        if any(Q[i][j] != Q[j][i] for i in range(b2) for j in range(b2)):
            raise ValueError("intersection matrix must be symmetric")
        alpha0 = tuple(int(x) for x in self.alpha0) if self.alpha0 else (0,) * b2
        if len(alpha0) != b2:
            raise ValueError("offset has length %d, expected %d" % (len(alpha0), b2))
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "alpha0", alpha0)

    @property
    def b2(self) -> int:
        return len(self.Q)

    def pair(self, a, b) -> int:
        return sum(a[i] * self.Q[i][j] * b[j] for i in range(self.b2) for j in range(self.b2))

    @classmethod
    def from_json(cls, data) -> "FourManifoldDatum":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(map(tuple, data.get("Q", []))), tuple(data.get("alpha0", ())))


@dataclass
class SurfaceDatum:
    """Components as ``(chi, class, closed)`` triples."""

    components: list = field(default_factory=list)

    def __post_init__(self):
        comps = []
        for chi, cls, closed in self.components:
            chi, cls, closed = int(chi), tuple(int(x) for x in cls), bool(closed)
            if closed and chi % 2:
                raise ValueError("closed orientable components have even Euler characteristic")
            comps.append((chi, cls, closed))
        self.components = comps

    @property
    def chi(self) -> int:
        return sum(c[0] for c in self.components)

    @property
    def total_class(self) -> tuple:
        if not self.components:
            return ()
        width = len(self.components[0][1])
        return tuple(sum(c[1][i] for c in self.components) for i in range(width))

    @classmethod
    def from_json(cls, data) -> "SurfaceDatum":
        if isinstance(data, str):
            data = json.loads(data)
        return cls([(c["chi"], c.get("class", []), c.get("closed", False))
                    for c in data["components"]])


# ---------------------------------------------------------------------------
# gradings and bounds
# ---------------------------------------------------------------------------

def surface_tridegree(N: int, chi: int, ss: int, cls=()) -> tuple:
    """(class, (1-N) chi - N ss, ss)."""
    return (tuple(cls), (1 - N) * chi - N * ss, ss)


def genus_bound(N: int, qmin: int, ss: int) -> int:
    """Largest Euler characteristic allowed by the q_min bound."""
    if N < 2:
        raise ValueError("the Euler characteristic bound needs N >= 2")
    return floor(Fraction(-N * ss - qmin, N - 1))


def is_homologically_diverse(S: SurfaceDatum):
    """(True, None) or (False, offending subset of closed component indices)."""
    closed = [i for i, c in enumerate(S.components) if c[2]]
    for size in range(1, len(closed) + 1):
        for subset in combinations(closed, size):
            width = len(S.components[subset[0]][1])
            total = [sum(S.components[i][1][k] for i in subset) for k in range(width)]
            if all(x == 0 for x in total):
                return False, list(subset)
    return True, None


def gl1_skein_tridegree(W: FourManifoldDatum, v) -> tuple:
    """Tridegree ``(alpha, -alpha.alpha, alpha.alpha)`` of ``alpha0 + v``."""
    v = tuple(int(x) for x in v)
    if len(v) != W.b2:
        raise ValueError("class has length %d, expected %d" % (len(v), W.b2))
    alpha = tuple(a + b for a, b in zip(W.alpha0, v))
    ss = W.pair(alpha, alpha)
    return alpha, -ss, ss


def qmin_for_positive_diagram(n: int, k: int, N: int) -> tuple[int, int]:
    """Bidegree of the lowest generator at the right end of a positive diagram."""
    if n < 1:
        raise ValueError("need at least one crossing")
    return k * (1 - N) - n, n


def qmin_for_negative_diagram(n: int, k: int, N: int) -> tuple[int, int]:
    """Companion bidegree at the left end of a negative diagram."""
    if n < 1:
        raise ValueError("need at least one crossing")
    return (2 - k) * (1 - N) + n, -n


def cable_invariants(r: int, m: int) -> dict:
    """Closed-form quantities for the cable L^1_{m+r, m}."""
    if r < 1 or m < 0:
        raise ValueError("need r >= 1 and m >= 0")
    return {
        "r": r,
        "m": m,
        "n": m + r,
        "s": (r - 1) ** 2 - 2 * m,
        "chi_bound_s": 2 * m + 2 * r - r * r,
        "chi_km": 2 - (r - 1) * (r - 2) - (2 * m + r),
        "qmin_conditional": {"value": -2 * m - 2 * r + r * r, "conditional": True,
                             "hypothesis": "q_min bounds coincide with the s-invariant bounds"},
        "handle_lower_bound": -4 * m - 3 * r + r * r,
    }


def s2xd2_model(k: int, depth: int) -> list[tuple[int, int]]:
    """Graded rank of the S^2 x D^2 sphere model in class k, top ``depth`` levels.

    Generators are (n extra sphere pairs, dots in {0, 1}) in q-degree
    ``2 (dots - |k| - 2 n)``.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    top = 2 * (1 - abs(k))
    floor_q = top - 2 * (depth - 1)
    mult = {}
    n = 0
    while 2 * (1 - abs(k) - 2 * n) >= floor_q:
        for dots in (1, 0):
            q = 2 * (dots - abs(k) - 2 * n)
            if q >= floor_q:
                mult[q] = mult.get(q, 0) + 1
        n += 1
    return sorted(mult.items(), reverse=True)


# ---------------------------------------------------------------------------
# coloring decomposition
# ---------------------------------------------------------------------------

def colorings(D: PlanarDiagram, n_colors: int):
    comps = components(D)
    for c in product(range(n_colors), repeat=len(comps)):
        yield dict(zip(comps, c))


def _convolve(a: dict, b: dict) -> dict:
    out = {}
    for s, x in a.items():
        for t, y in b.items():
            out[s + t] = out.get(s + t, 0) + x * y
    return out


def _factor_dims(Dsub: PlanarDiagram, Ni: int, cache: dict) -> dict:
    key = (Dsub.to_pd(), Ni)
    if key in cache:
        return cache[key]
    if Dsub.n_components == 0:
        dims = {0: 1}
    elif Ni == 1:
        dims = {Dsub.writhe: 1}
    elif Ni == 2:
        H = rational_homology(cube(Dsub, unknot_algebra(2)))
        dims = H.dims_by_t()
    elif Dsub.n_crossings == 0:
        dims = {0: Ni ** Dsub.n_components}
    else:
        raise UnsupportedRank("gl(%d) factor for a sublink with crossings" % Ni)
    cache[key] = dims
    return dims


def coloring_contributions(D: PlanarDiagram, sigma, max_components: int = 8) -> list:
    """``[(coloring, t-dimensions)]`` for every coloring of the components."""
    if not isinstance(sigma, DeformationMultiset):
        sigma = DeformationMultiset(sigma)
    if D.n_components > max_components:
        raise ValueError("too many components for coloring enumeration")
    mults = sigma.multiplicities
    cache = {}
    out = []
    for col in colorings(D, len(sigma)):
        summand = {0: 1}
        for i, Ni in enumerate(mults):
            kept = [c for c, v in col.items() if v == i]
            summand = _convolve(summand, _factor_dims(sublink(D, kept), Ni, cache))
        out.append((col, {t: x for t, x in sorted(summand.items()) if x}))
    return out


def predict_decomposition(D: PlanarDiagram, sigma, max_components: int = 8) -> dict:
    """t-dimensions predicted by summing over colorings of components."""
    total = {}
    for _, dims in coloring_contributions(D, sigma, max_components):
        for t, x in dims.items():
            total[t] = total.get(t, 0) + x
    return {t: x for t, x in sorted(total.items()) if x}


@dataclass
class DecompositionReport:
    sigma: str
    computed: dict
    predicted: dict

    @property
    def rows(self) -> list[dict]:
        ts = sorted(set(self.computed) | set(self.predicted))
        return [{"t": t, "computed": self.computed.get(t, 0), "predicted": self.predicted.get(t, 0),
                 "match": self.computed.get(t, 0) == self.predicted.get(t, 0)} for t in ts]

    @property
    def ok(self) -> bool:
        return all(r["match"] for r in self.rows)

    def to_json(self) -> dict:
        return {"sigma": self.sigma, "match": self.ok, "rows": self.rows}


def verify_decomposition(D: PlanarDiagram, sigma) -> DecompositionReport:
    """Compare deformed homology dimensions with the coloring prediction."""
    if not isinstance(sigma, DeformationMultiset):
        sigma = DeformationMultiset(sigma)
    if sigma.N != 2:
        raise UnsupportedRank("decomposition verification runs with N = 2")
    H = deformed_homology(D, sigma)
    return DecompositionReport(str(sigma), H.dims_by_t(), predict_decomposition(D, sigma))


def positive_diagram_check(D: PlanarDiagram, N: int = 2) -> dict:
    """Closed-form data for a positive diagram: q_min bidegree and bound."""
    k, chi = seifert_data(D)
    q, t = qmin_for_positive_diagram(D.n_crossings, k, N)
    return {"k": k, "n": D.n_crossings, "chi_seifert": chi, "qmin": q, "t": t,
            "chi_bound": genus_bound(N, q, D.writhe)}
