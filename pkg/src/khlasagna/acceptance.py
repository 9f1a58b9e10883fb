"""
Acceptance checks, one function per criterion.

Every check returns ``(ok, detail)``; :func:`run_all` times them and
returns records sorted by criterion number regardless of how many worker
processes were used.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product

from .corpus import POSITIVE, fixture_names, load_fixture
from .frobenius import (DeformationMultiset, crt_idempotents, frobenius_axiom_violations,
                        unknot_algebra)
from .homology import deformed_homology, filtered_homology, integral_homology, q_min, rational_homology
from .khcomplex import cube, framing_shift
from .lasagna import (SurfaceDatum, cable_invariants, coloring_contributions, genus_bound,
                      is_homologically_diverse, s2xd2_model, verify_decomposition)
from .linkdiag import add_kink, disjoint_union, from_braid, seifert_data

__all__ = ["CRITERIA", "run_all", "run_one", "reidemeister_pairs", "shift_bigraded"]

SIGMA01 = DeformationMultiset([0, 1])


def shift_bigraded(H: dict, dq: int, dt: int) -> dict:
    return {(q + dq, t + dt): r for (q, t), r in H.items()}


def _free(D, N, integral=False):
    C = cube(D, unknot_algebra(N))
    return (integral_homology(C) if integral else rational_homology(C)).free


def reidemeister_pairs():
    """Pairs of diagrams of the same framed link."""
    return [
        ("R3 s1s2s1 / s2s1s2", from_braid(3, [1, 2, 1]), from_braid(3, [2, 1, 2])),
        ("R2 3-strand", from_braid(3, [1, 1, 1, 2]), from_braid(3, [1, 2, -2, 1, 1, 2])),
        ("R2 trefoil", from_braid(2, [1, 1, 1]), from_braid(2, [1, -1, 1, 1, 1])),
        ("Hopf PD / braid", load_fixture("hopf_pos"), from_braid(2, [1, 1])),
    ]


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def c1_unknot_algebra():
    U = load_fixture("unknot")
    free = _free(U, 2, integral=True)
    if free != {(-1, 0): 1, (1, 0): 1}:
        return False, "undeformed unknot homology %r" % free
    A = unknot_algebra(2, "rationals", SIGMA01)
    es = [A.from_poly(e) for e in crt_idempotents(SIGMA01)]
    one = A.unit()
    if es != [{0: 1, 1: -1}, {1: 1}]:
        return False, "idempotents %r" % es
    total = {}
    for e in es:
        for k, v in e.items():
            total[k] = total.get(k, 0) + v
    if {k: v for k, v in total.items() if v} != one:
        return False, "idempotents do not sum to 1"
    for i, j in product(range(2), repeat=2):
        prod = A.multiply(es[i], es[j])
        if prod != (es[i] if i == j else {}):
            return False, "e%d e%d = %r" % (i, j, prod)
    H = deformed_homology(U, SIGMA01)
    if H.dims_by_t() != {0: 2}:
        return False, "deformed unknot dims %r" % H.dims_by_t()
    return True, "H = (-1,0)+(1,0); e(0)=1-X, e(1)=X orthogonal"


def c2_framing_law():
    U, kp, kn = (load_fixture(n) for n in ("unknot", "kink_pos", "kink_neg"))
    for N in (2, 1):
        base = _free(U, N)
        for D, df in ((kp, 1), (kn, -1)):
            want = shift_bigraded(base, *framing_shift(N, df))
            got = _free(D, N)
            if got != want:
                return False, "N=%d kink %+d: %r != %r" % (N, df, got, want)
    return True, "shifts (-2,+1)/(+2,-1) for N=2 and (-1,+1)/(+1,-1) for N=1"


def c3_gl1_oracle():
    for name in fixture_names():
        D = load_fixture(name)
        got = _free(D, 1)
        if got != {(-D.writhe, D.writhe): 1}:
            return False, "%s: %r" % (name, got)
    return True, "rank 1 at (-w, w) on %d fixtures" % len(fixture_names())


def _positive_qmins():
    out = {}
    for name, (n, k) in sorted(POSITIVE.items()):
        D = load_fixture(name)
        H = deformed_homology(D, SIGMA01, [n])
        out[name] = (n, k, q_min(H, n))
    return out


def c4_positive_qmin():
    details = []
    for name, (n, k, q) in _positive_qmins().items():
        if q != k * (1 - 2) - n:
            return False, "%s: q_min %r, expected %d" % (name, q, k * (1 - 2) - n)
        details.append("%s %d" % (name, q))
    return True, ", ".join(details)


def c5_genus_bound():
    details = []
    for name, (n, k, q) in _positive_qmins().items():
        D = load_fixture(name)
        chi = genus_bound(2, q, D.writhe)
        if chi != k - n or seifert_data(D) != (k, k - n):
            return False, "%s: bound %d, k-n %d" % (name, chi, k - n)
        details.append("%s %d" % (name, chi))
    L = load_fixture("trefoil_left")
    n, k = L.n_crossings, seifert_data(L)[0]
    q = q_min(deformed_homology(L, SIGMA01, [-n]), -n)
    chi = genus_bound(2, q, L.writhe)
    if q != (2 - k) * (1 - 2) + n or chi != n + (k - 2):
        return False, "left trefoil: q_min %r bound %r" % (q, chi)
    details.append("trefoil_left %d" % chi)
    return True, ", ".join(details)


def c6_deformed_total():
    want = {"unknot": 2, "trefoil_right": 2, "trefoil_left": 2, "hopf_pos": 4, "hopf_neg": 4,
            "unlink2": 4, "t24": 4}
    for name, total in sorted(want.items()):
        D = load_fixture(name)
        got = deformed_homology(D, SIGMA01).total()
        if got != total or got != 2 ** D.n_components:
            return False, "%s: total %d, expected %d" % (name, got, total)
    return True, "2^c on %d fixtures" % len(want)


def c7_decomposition():
    checked = 0
    for name in fixture_names():
        D = load_fixture(name)
        if D.n_crossings > 8:
            continue
        report = verify_decomposition(D, SIGMA01)
        if not report.ok:
            return False, "%s: %r" % (name, report.rows)
        checked += 1
    H = load_fixture("hopf_pos")
    report = verify_decomposition(H, SIGMA01)
    if report.computed != {0: 2, 2: 2}:
        return False, "Hopf dims %r" % report.computed
    mixed = {}
    for col, dims in coloring_contributions(H, SIGMA01):
        if len(set(col.values())) > 1:
            for t, x in dims.items():
                mixed[t] = mixed.get(t, 0) + x
    if mixed != {0: 2}:
        return False, "mixed Hopf colorings give %r" % mixed
    return True, "%d fixtures match; Hopf t=0:2 (mixed), t=2:2" % checked


def c8_reidemeister():
    for label, D1, D2 in reidemeister_pairs():
        if D1.writhe != D2.writhe:
            return False, "%s: writhes differ" % label
        h1, h2 = _free(D1, 2), _free(D2, 2)
        if h1 != h2:
            return False, "%s: %r != %r" % (label, h1, h2)
        hk = _free(add_kink(D1, 1), 2)
        if hk != shift_bigraded(h1, -2, 1):
            return False, "%s: kink shift fails" % label
    return True, "%d pairs equal; kink shift (-2,+1)" % len(reidemeister_pairs())


def c9_cable_grid():
    for r, m in product(range(1, 11), range(0, 11)):
        c = cable_invariants(r, m)
        if (c["s"] != (r - 1) ** 2 - 2 * m or c["chi_bound_s"] != 2 * m + 2 * r - r * r
                or c["chi_km"] != 2 - (r - 1) * (r - 2) - (2 * m + r)
                or c["qmin_conditional"]["value"] != -2 * m - 2 * r + r * r
                or not c["qmin_conditional"]["conditional"]
                or c["handle_lower_bound"] != -4 * m - 3 * r + r * r):
            return False, "formula mismatch at r=%d m=%d" % (r, m)
        if c["chi_km"] > c["chi_bound_s"]:
            return False, "chi_km > chi_bound_s at r=%d m=%d" % (r, m)
        if m > 1 and not c["chi_km"] < c["chi_bound_s"]:
            return False, "no strict inequality at r=%d m=%d" % (r, m)
    return True, "grid r<=10, m<=10"


def c10_spheres():
    for k in (0, 1, 2):
        model = s2xd2_model(k, 10)
        degrees = [q for q, _ in model]
        top = 2 * (1 - abs(k))
        if any(m != 1 for _, m in model):
            return False, "k=%d multiplicities %r" % (k, model)
        if degrees != [top - 2 * i for i in range(10)]:
            return False, "k=%d degrees %r" % (k, degrees)
    return True, "k=0,1,2 depth 10: 1+q^-2+..."


def _kunneth(a: dict, b: dict) -> dict:
    out = {}
    for (q1, t1), x in a.items():
        for (q2, t2), y in b.items():
            key = (q1 + q2, t1 + t2)
            out[key] = out.get(key, 0) + x * y
    return out


def property_failures(seed: int = 0) -> list[str]:
    """Run the cross-module property checks; return failure descriptions."""
    fails = []
    algebras = [unknot_algebra(N) for N in (1, 2, 3, 4)]
    sigmas = [DeformationMultiset(s) for s in ([0, 1], [(0, 2), 1], [0, 1, 3], [Fraction(-1, 2), 2],
                                               [(1, 3)], [(2, 2), (Fraction(1, 3), 2)])]
    algebras += [unknot_algebra(s.N, "rationals", s) for s in sigmas]
    algebras += [unknot_algebra(N, "equivariant") for N in (1, 2, 3)]
    for A in algebras:
        bad = frobenius_axiom_violations(A)
        if bad:
            fails.append("Frobenius %s N=%d: %s" % (A.mode, A.N, bad))
    # CRT identities
    for s in sigmas:
        A = unknot_algebra(s.N, "rationals", s)
        es = [A.from_poly(e) for e in crt_idempotents(s)]
        total = {}
        for i, e in enumerate(es):
            for j, f in enumerate(es):
                if A.multiply(e, f) != (e if i == j else {}):
                    fails.append("CRT orthogonality %s" % s)
            for k, v in e.items():
                total[k] = total.get(k, 0) + v
            lam, m = s.entries[i]
            kill = A.from_poly([1])
            for _ in range(m):
                kill = A.multiply(kill, A.from_poly([-lam, 1]))
            if A.multiply(kill, e):
                fails.append("CRT annihilation %s" % s)
        if {k: v for k, v in total.items() if v} != A.unit():
            fails.append("CRT sum %s" % s)
    # d^2 = 0 and filtration monotonicity
    for name in fixture_names():
        D = load_fixture(name)
        modes = [unknot_algebra(2), unknot_algebra(1), unknot_algebra(2, "rationals", SIGMA01)]
        if D.n_crossings <= 4:
            modes.append(unknot_algebra(2, "equivariant"))
        for A in modes:
            if not cube(D, A).check_d_squared():
                fails.append("d^2 != 0 on %s (%s)" % (name, A.mode))
        if D.n_crossings <= 8:
            H = filtered_homology(cube(D, unknot_algebra(2, "rationals", SIGMA01)))
            for t, js in H.jumps.items():
                dims = [x for _, x in js]
                levels = [p for p, _ in js]
                if dims != sorted(dims) or levels != sorted(levels) or (js and dims[-1] != H.dims[t]):
                    fails.append("filtration not monotone on %s t=%d" % (name, t))
    # Kunneth on split unions
    pairs = [("trefoil_right", "hopf_pos"), ("unknot", "figure8"), ("kink_pos", "trefoil_left")]
    for a, b in pairs:
        Da, Db = load_fixture(a), load_fixture(b)
        if _free(disjoint_union(Da, Db), 2) != _kunneth(_free(Da, 2), _free(Db, 2)):
            fails.append("Kunneth %s + %s" % (a, b))
    # diversity monotonicity on random surfaces
    rng = random.Random(seed)
    for _ in range(200):
        b2 = rng.randint(1, 3)
        comps = [(2 * rng.randint(-2, 1) if closed else rng.randint(-3, 1),
                  [rng.randint(-1, 1) for _ in range(b2)], closed)
                 for closed in (rng.random() < 0.7 for _ in range(rng.randint(0, 5)))]
        S = SurfaceDatum(comps)
        ok, _ = is_homologically_diverse(S)
        if ok:
            for i, c in enumerate(S.components):
                if c[2] and not is_homologically_diverse(
                        SurfaceDatum(S.components[:i] + S.components[i + 1:]))[0]:
                    fails.append("diversity not monotone: %r" % comps)
    return fails


def c11_properties():
    fails = property_failures()
    if fails:
        return False, "; ".join(fails[:3])
    return True, "axioms, CRT, d^2=0, filtration, Kunneth, diversity"


CRITERIA = {
    1: ("unknot algebra", c1_unknot_algebra),
    2: ("framing law", c2_framing_law),
    3: ("gl(1) oracle", c3_gl1_oracle),
    4: ("positive-diagram q_min", c4_positive_qmin),
    5: ("genus-bound sharpness", c5_genus_bound),
    6: ("deformed total rank", c6_deformed_total),
    7: ("decomposition", c7_decomposition),
    8: ("Reidemeister invariance", c8_reidemeister),
    9: ("cable arithmetic", c9_cable_grid),
    10: ("S^2 x D^2 model", c10_spheres),
    11: ("property suite", c11_properties),
}


def run_one(cid: int) -> dict:
    name, fn = CRITERIA[cid]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, not a crashed run
        ok, detail = False, "%s: %s" % (type(exc).__name__, exc)
    return {"id": cid, "name": name, "ok": bool(ok), "detail": detail,
            "seconds": round(time.perf_counter() - start, 3)}


def run_all(only=None, threads: int = 1) -> list[dict]:
    ids = sorted(only) if only else sorted(CRITERIA)
    unknown = [i for i in ids if i not in CRITERIA]
    if unknown:
        raise ValueError("unknown criteria %r" % unknown)
    if threads > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(ids))) as pool:
            results = list(pool.map(run_one, ids))
    else:
        results = [run_one(i) for i in ids]
    return sorted(results, key=lambda r: r["id"])
