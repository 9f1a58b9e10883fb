"""
Rank-N unknot Frobenius algebras ``k[X]/p(X)``.

Three coefficient modes are supported:

``integers``
    undeformed, ``p = X^N``; graded, coefficients are ``int``.
``rationals``
    deformed by a multiset of exact rationals, ``p = prod (X - lam)^mult``;
    only filtered, coefficients are ``Fraction``.
``equivariant``
    ``p = X^N - sum (-1)^(i-1) e_i X^(N-i)`` over ``Z[e_1, ..., e_N]``;
    graded with ``deg e_i = 2i``, coefficients are sympy ring elements.

The basis is ``1, X, ..., X^(N-1)`` in q-degrees ``1-N, 3-N, ..., N-1``.
The counit picks the coefficient of ``X^(N-1)``; comultiplication is
read off from the dual basis of the resulting pairing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from sympy import ZZ
from sympy.polys.rings import ring

__all__ = [
    "DeformationMultiset",
    "FrobeniusData",
    "unknot_algebra",
    "crt_idempotents",
    "twisting_scalar",
    "specialize",
    "equivariant_ring",
    "elementary_symmetric",
    "poly_mul",
    "poly_divmod",
    "frobenius_axiom_violations",
]

MODES = ("integers", "rationals", "equivariant")


class DeformationMultiset:
    """Distinct exact rationals with positive multiplicities."""

    def __init__(self, entries):
        pairs = []
        for item in entries:
            if isinstance(item, tuple):
                lam, mult = item
            else:
                lam, mult = item, 1
            pairs.append((Fraction(lam), int(mult)))
        lams = [lam for lam, _ in pairs]
        if len(set(lams)) != len(lams):
            raise ValueError("deformation parameters must be pairwise distinct")
        if any(m < 1 for _, m in pairs):
            raise ValueError("multiplicities must be positive")
        if not pairs:
            raise ValueError("empty deformation multiset")
        self.entries = tuple(pairs)

    @classmethod
    def parse(cls, text: str) -> "DeformationMultiset":
        """Parse ``"0^2,1,3/2"`` style input."""
        entries = []
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                continue
            if "^" in tok:
                lam, mult = tok.split("^")
                entries.append((Fraction(lam.strip()), int(mult)))
            else:
                entries.append((Fraction(tok), 1))
        return cls(entries)

    @property
    def N(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def values(self) -> list[Fraction]:
        return [lam for lam, _ in self.entries]

    @property
    def multiplicities(self) -> list[int]:
        return [m for _, m in self.entries]

    def roots(self) -> list[Fraction]:
        """All roots with multiplicity."""
        return [lam for lam, m in self.entries for _ in range(m)]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, DeformationMultiset) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return ",".join(str(lam) if m == 1 else "%s^%d" % (lam, m) for lam, m in self.entries)

    def __repr__(self):
        return "DeformationMultiset(%s)" % self


# ---------------------------------------------------------------------------
# dense univariate polynomials, coefficient lists lowest degree first
# ---------------------------------------------------------------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def poly_divmod(a, b):
    """Division over a field; ``b`` must be nonzero."""
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = [Fraction(x) for x in a]
    lead = Fraction(b[-1])
    while len(r) >= len(b) and r:
        coef = r[-1] / lead
        shift = len(r) - len(b)
        q[shift] = coef
        for i, y in enumerate(b):
            r[shift + i] -= coef * y
        r = _trim(r)
    return _trim(q), r


def _poly_egcd(a, b):
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    lead = Fraction(r0[-1])
    return ([x / lead for x in r0], [x / lead for x in s0], [x / lead for x in t0])


def _linear_power(lam, m):
    p = [Fraction(1)]
    for _ in range(m):
        p = poly_mul(p, [-Fraction(lam), Fraction(1)])
    return p


def elementary_symmetric(values) -> list:
    """[e_1, ..., e_N] of the given values."""
    # prod (X - v) = sum_k (-1)^k e_k X^(N-k)
    p = [Fraction(1)]
    for v in values:
        p = poly_mul(p, [-Fraction(v), Fraction(1)])
    N = len(values)
    return [(-1) ** k * p[N - k] for k in range(1, N + 1)]


@lru_cache(maxsize=None)
def equivariant_ring(N: int):
    """The ring ``Z[e_1, ..., e_N]`` and its generators."""
    names = ",".join("e%d" % i for i in range(1, N + 1))
    R, *gens = ring(names, ZZ)
    return R, tuple(gens)


# ---------------------------------------------------------------------------
# the algebra
# ---------------------------------------------------------------------------

@dataclass
class FrobeniusData:
    """Structure constants of ``k[X]/p(X)`` on the monomial basis.

    ``relation[a]`` is the coefficient of ``X^a`` in the reduction of
    ``X^N``.  ``mult[(a, b)]`` and ``comult[a]`` are sparse dicts
    ``{c: coeff}`` and ``{(b, c): coeff}``.
    """

    N: int
    mode: str
    relation: tuple
    qdeg: tuple
    mult: dict
    comult: dict
    counit: tuple
    sigma: DeformationMultiset | None = None
    one: object = 1
    zero: object = 0
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.N

    @property
    def graded(self) -> bool:
        return self.mode != "rationals"

    def unit(self) -> dict:
        return {0: self.one}

    # element level helpers; elements are dicts {exponent: coeff}
    def multiply(self, u: dict, v: dict) -> dict:
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, z in self.mult[(a, b)].items():
                    out[c] = out.get(c, self.zero) + x * y * z
        return {k: v for k, v in out.items() if v != 0}

    def apply_comult(self, u: dict) -> dict:
        out = {}
        for a, x in u.items():
            for bc, z in self.comult[a].items():
                out[bc] = out.get(bc, self.zero) + x * z
        return {k: v for k, v in out.items() if v != 0}

    def apply_counit(self, u: dict):
        total = self.zero
        for a, x in u.items():
            total = total + x * self.counit[a]
        return total

    def power(self, k: int) -> dict:
        out = self.unit()
        for _ in range(k):
            out = self.multiply(out, {1: self.one} if self.N > 1 else {0: self.relation[0]})
        return out

    def from_poly(self, coeffs) -> dict:
        """Element represented by a polynomial in X (lowest degree first)."""
        out = {}
        for k, c in enumerate(coeffs):
            if c == 0:
                continue
            for a, z in self.power(k).items():
                out[a] = out.get(a, self.zero) + c * z
        return {k: v for k, v in out.items() if v != 0}

    def to_json(self) -> dict:
        s = _coeff_str
        return {
            "N": self.N,
            "mode": self.mode,
            "sigma": None if self.sigma is None else str(self.sigma),
            "relation": [s(c) for c in self.relation],
            "qdeg": list(self.qdeg),
            "counit": [s(c) for c in self.counit],
            "mult": {"%d,%d" % k: {str(c): s(v) for c, v in sorted(d.items())}
                     for k, d in sorted(self.mult.items())},
            "comult": {str(a): {"%d,%d" % bc: s(v) for bc, v in sorted(d.items())}
                       for a, d in sorted(self.comult.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _coeff_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return str(c)


def _build(N, mode, relation, one, zero, sigma=None) -> FrobeniusData:
    relation = tuple(relation)
    # X^k for k < 2N - 1 as coefficient vectors of length N
    powers = []
    for k in range(2 * N - 1):
        if k < N:
            v = [zero] * N
            v[k] = one
        else:
            prev = powers[-1]
            v = [zero] * N
            top = prev[N - 1]
            for a in range(N - 1):
                v[a + 1] = prev[a]
            for a in range(N):
                v[a] = v[a] + top * relation[a]
        powers.append(v)
    mult = {}
    for a, b in product(range(N), repeat=2):
        mult[(a, b)] = {c: x for c, x in enumerate(powers[a + b]) if x != 0}
    counit = tuple(one if a == N - 1 else zero for a in range(N))
    # Gram matrix G[a][b] = counit(X^(a+b)) = powers[a+b][N-1]
    gram = [[powers[a + b][N - 1] for b in range(N)] for a in range(N)]
    ginv = _invert_antitriangular(gram, one, zero)
    # dual basis X_i^* = sum_j ginv[j][i] X^j
    comult = {}
    for a in range(N):
        out = {}
        for i in range(N):
            for c, x in mult[(a, i)].items():
                for j in range(N):
                    y = ginv[j][i]
                    if y != 0:
                        out[(c, j)] = out.get((c, j), zero) + x * y
        comult[a] = {k: v for k, v in out.items() if v != 0}
    qdeg = tuple(2 * a + 1 - N for a in range(N))
    return FrobeniusData(N, mode, relation, qdeg, mult, comult, counit, sigma, one, zero)


def _invert_antitriangular(G, one, zero):
    """Invert a matrix with zeros above the antidiagonal and ones on it.

    ``G J`` is lower unitriangular, so the inverse needs no division.
    """
    N = len(G)
    L = [[G[a][N - 1 - b] for b in range(N)] for a in range(N)]
    # forward substitution for L^{-1}
    Linv = [[zero] * N for _ in range(N)]
    for col in range(N):
        for row in range(N):
            acc = one if row == col else zero
            for k in range(row):
                acc = acc - L[row][k] * Linv[k][col]
            Linv[row][col] = acc
    # G^{-1} = J L^{-1}
    return [Linv[N - 1 - a] for a in range(N)]


def unknot_algebra(N: int, mode: str = "integers", sigma=None) -> FrobeniusData:
    """The rank-N unknot algebra in the requested coefficient mode."""
    if N < 1:
        raise ValueError("rank must be positive")
    if mode not in MODES:
        raise ValueError("unknown coefficient mode %r" % mode)
    if mode == "integers":
        return _build(N, mode, [0] * N, 1, 0)
    if mode == "rationals":
        if sigma is None:
            raise ValueError("rationals mode needs a deformation multiset")
        if not isinstance(sigma, DeformationMultiset):
            sigma = DeformationMultiset(sigma)
        if sigma.N != N:
            raise ValueError("deformation multiset has total %d, expected %d" % (sigma.N, N))
        # X^N = X^N - prod(X - lam)
        p = [Fraction(1)]
        for lam in sigma.roots():
            p = poly_mul(p, [-lam, Fraction(1)])
        relation = [-p[a] for a in range(N)]
        return _build(N, mode, relation, Fraction(1), Fraction(0), sigma)
    R, gens = equivariant_ring(N)
    relation = [R.zero] * N
    for i in range(1, N + 1):
        relation[N - i] = (-1) ** (i - 1) * gens[i - 1]
    A = _build(N, mode, relation, R.one, R.zero)
    A.meta["ring"] = R
    return A


def crt_idempotents(sigma) -> list[list[Fraction]]:
    """Idempotents ``e(lam_i)`` as polynomials of degree < N.

    ``e(lam_i) = 1 mod (X - lam_i)^(N_i)`` and ``0`` modulo the other factors.
    """
    if not isinstance(sigma, DeformationMultiset):
        sigma = DeformationMultiset(sigma)
    factors = [_linear_power(lam, m) for lam, m in sigma]
    total = [Fraction(1)]
    for f in factors:
        total = poly_mul(total, f)
    out = []
    for i, f in enumerate(factors):
        g = [Fraction(1)]
        for j, h in enumerate(factors):
            if j != i:
                g = poly_mul(g, h)
        _, s, _ = _poly_egcd(g, f)
        e = poly_divmod(poly_mul(s, g), total)[1]
        out.append(e + [Fraction(0)] * (sigma.N - len(e)))
    return out


def twisting_scalar(sigma, i: int) -> Fraction:
    """``d_i = prod_{j != i} (lam_i - lam_j)^(N_j)``."""
    if not isinstance(sigma, DeformationMultiset):
        sigma = DeformationMultiset(sigma)
    lam_i = sigma.entries[i][0]
    d = Fraction(1)
    for j, (lam, m) in enumerate(sigma.entries):
        if j != i:
            d *= (lam_i - lam) ** m
    return d


# ---------------------------------------------------------------------------
# specialization e_i -> values
# ---------------------------------------------------------------------------

def _eval_poly_element(p, values):
    """Evaluate a ``Z[e_1..e_N]`` element at exact values (missing -> error)."""
    if not hasattr(p, "terms"):
        return Fraction(p)
    total = Fraction(0)
    for monom, coeff in p.terms():
        term = Fraction(int(coeff))
        for k, exp in enumerate(monom):
            if exp:
                if values[k] is None:
                    raise ValueError("variable e%d is unassigned" % (k + 1))
                term *= Fraction(values[k]) ** exp
        total += term
    return total


def specialize(obj, values):
    """Substitute ``e_i -> values[i-1]`` in an equivariant object.

    ``obj`` may be a ring element, a ``FrobeniusData`` in equivariant mode,
    or a sparse matrix ``{key: element}``.  ``values`` may also be a
    ``DeformationMultiset``, meaning its elementary symmetric values.
    """
    if isinstance(obj, FrobeniusData) and isinstance(values, DeformationMultiset):
        sigma = values
        values = elementary_symmetric(sigma.roots())
    else:
        sigma = None
        if isinstance(values, DeformationMultiset):
            values = elementary_symmetric(values.roots())
    values = list(values)
    if isinstance(obj, FrobeniusData):
        if obj.mode != "equivariant":
            raise ValueError("only equivariant algebras can be specialized")
        if len(values) != obj.N or any(v is None for v in values):
            raise ValueError("every e_i needs a value")
        ev = lambda p: _eval_poly_element(p, values)  # noqa: E731
        all_zero = all(Fraction(v) == 0 for v in values)
        relation = [ev(c) for c in obj.relation]
        mult = {k: {c: ev(x) for c, x in d.items() if ev(x) != 0} for k, d in obj.mult.items()}
        comult = {k: {c: ev(x) for c, x in d.items() if ev(x) != 0} for k, d in obj.comult.items()}
        counit = tuple(ev(c) for c in obj.counit)
        if all_zero:
            to_int = lambda d: {k: int(v) for k, v in d.items()}  # noqa: E731
            return FrobeniusData(obj.N, "integers", tuple(int(r) for r in relation), obj.qdeg,
                                 {k: to_int(d) for k, d in mult.items()},
                                 {k: to_int(d) for k, d in comult.items()},
                                 tuple(int(c) for c in counit), None, 1, 0)
        return FrobeniusData(obj.N, "rationals", tuple(relation), obj.qdeg, mult, comult,
                             counit, sigma, Fraction(1), Fraction(0))
    # ring elements are dict subclasses, so test for them first
    if isinstance(obj, dict) and not hasattr(obj, "terms"):
        out = {}
        for k, v in obj.items():
            x = _eval_poly_element(v, values)
            if x != 0:
                out[k] = x
        return out
    return _eval_poly_element(obj, values)


# ---------------------------------------------------------------------------
# axiom check
# ---------------------------------------------------------------------------

def _tensor_mul_left(A, t):
    """(m x id) on a dict {(a, b, c): coeff}."""
    out = {}
    for (a, b, c), x in t.items():
        for d, y in A.mult[(a, b)].items():
            out[(d, c)] = out.get((d, c), A.zero) + x * y
    return {k: v for k, v in out.items() if v != 0}


def frobenius_axiom_violations(A: FrobeniusData) -> list[str]:
    """Names of the Frobenius algebra axioms that fail on basis elements.

    Checks commutativity, associativity, unit, coassociativity, counit,
    the Frobenius relation ``(m x id)(id x comult) = comult m`` and that
    the counit pairing is nondegenerate.
    """
    N, zero = A.N, A.zero
    bad = set()

    def clean(d):
        return {k: v for k, v in d.items() if v != 0}

    for a, b in product(range(N), repeat=2):
        if clean(A.mult[(a, b)]) != clean(A.mult[(b, a)]):
            bad.add("commutativity")
        if A.multiply(A.unit(), {a: A.one}) != {a: A.one}:
            bad.add("unit")
        for c in range(N):
            left = A.multiply(A.multiply({a: A.one}, {b: A.one}), {c: A.one})
            right = A.multiply({a: A.one}, A.multiply({b: A.one}, {c: A.one}))
            if left != right:
                bad.add("associativity")
    for a in range(N):
        cop = A.comult[a]
        # (comult x id) comult vs (id x comult) comult
        left, right = {}, {}
        for (b, c), x in cop.items():
            for (d, e), y in A.comult[b].items():
                left[(d, e, c)] = left.get((d, e, c), zero) + x * y
            for (d, e), y in A.comult[c].items():
                right[(b, d, e)] = right.get((b, d, e), zero) + x * y
        if clean(left) != clean(right):
            bad.add("coassociativity")
        # (counit x id) comult = id = (id x counit) comult
        l_id, r_id = {}, {}
        for (b, c), x in cop.items():
            l_id[c] = l_id.get(c, zero) + x * A.counit[b]
            r_id[b] = r_id.get(b, zero) + x * A.counit[c]
        if clean(l_id) != {a: A.one} or clean(r_id) != {a: A.one}:
            bad.add("counit")
        # Frobenius relation on X^a x X^b
        for b in range(N):
            t = {}
            for (c, d), x in A.comult[b].items():
                t[(a, c, d)] = t.get((a, c, d), zero) + x
            lhs = _tensor_mul_left(A, clean(t))
            rhs = {}
            for c, x in A.mult[(a, b)].items():
                for cd, y in A.comult[c].items():
                    rhs[cd] = rhs.get(cd, zero) + x * y
            if lhs != clean(rhs):
                bad.add("frobenius relation")
    gram = [[A.apply_counit(A.mult[(a, b)]) for b in range(N)] for a in range(N)]
    # anti-triangular with unit antidiagonal means invertible
    if any(gram[a][N - 1 - a] != A.one for a in range(N)) or any(
            gram[a][b] != 0 for a in range(N) for b in range(N) if a + b < N - 1):
        bad.add("nondegeneracy")
    return sorted(bad)
