from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khlasagna.frobenius import (DeformationMultiset, crt_idempotents, elementary_symmetric,
                                 equivariant_ring, frobenius_axiom_violations, poly_divmod, poly_mul,
                                 specialize, twisting_scalar, unknot_algebra)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def multisets(draw, max_total=5):
    lams = draw(st.lists(rationals, min_size=1, max_size=3, unique=True))
    mults = [draw(st.integers(1, 2)) for _ in lams]
    while sum(mults) > max_total:
        mults[mults.index(max(mults))] -= 1
    return DeformationMultiset(list(zip(lams, mults)))


def test_undeformed_n2():
    A = unknot_algebra(2)
    assert A.relation == (0, 0)
    assert A.multiply({1: 1}, {1: 1}) == {}
    assert A.counit == (0, 1)
    assert A.qdeg == (-1, 1)


def test_deformed_01():
    A = unknot_algebra(2, "rationals", [0, 1])
    assert A.multiply({1: 1}, {1: 1}) == {1: 1}
    assert A.dim == 2 and not A.graded


def test_rank_one():
    A = unknot_algebra(1, "rationals", [Fraction(3, 2)])
    assert A.relation == (Fraction(3, 2),)
    assert A.power(1) == {0: Fraction(3, 2)}


def test_sigma_total_mismatch():
    with pytest.raises(ValueError):
        unknot_algebra(3, "rationals", [0, 1])


def test_multiset_parsing():
    s = DeformationMultiset.parse("0^2, 1, 3/2")
    assert s.entries == ((0, 2), (1, 1), (Fraction(3, 2), 1))
    assert s.N == 4 and str(s) == "0^2,1,3/2"
    assert DeformationMultiset.parse(str(s)) == s
    with pytest.raises(ValueError):
        DeformationMultiset([1, 1])
    with pytest.raises(ValueError):
        DeformationMultiset([(1, 0)])


def test_crt_examples():
    assert crt_idempotents([0, 1]) == [[1, -1], [0, 1]]
    assert crt_idempotents([5]) == [[1]]
    e0, e1 = crt_idempotents(DeformationMultiset([(0, 2), (1, 1)]))
    assert e1 == [0, 0, 1] and e0 == [1, 0, -1]
    # e(1) = 1 mod (X - 1), = 0 mod X^2
    assert poly_divmod(e1, [-1, 1])[1] == [1]
    assert poly_divmod(e1, [0, 0, 1])[1] == []


@settings(max_examples=30, deadline=None)
@given(multisets())
def test_crt_identities(sigma):
    A = unknot_algebra(sigma.N, "rationals", sigma)
    es = [A.from_poly(e) for e in crt_idempotents(sigma)]
    total = {}
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            assert A.multiply(e, f) == (e if i == j else {})
        for k, v in e.items():
            total[k] = total.get(k, 0) + v
        lam, m = sigma.entries[i]
        killer = A.from_poly([1])
        for _ in range(m):
            killer = A.multiply(killer, A.from_poly([-lam, 1]))
        assert A.multiply(killer, e) == {}
    assert {k: v for k, v in total.items() if v} == A.unit()


def test_twisting_examples():
    assert twisting_scalar([0, 1], 1) == 1
    assert twisting_scalar([0, 2], 1) == 2
    assert twisting_scalar([0, 1, 3], 2) == 6


@settings(max_examples=30, deadline=None)
@given(multisets())
def test_sphere_evaluation(sigma):
    # counit(e_i (X - lam_i)^(N_i - 1)) = 1 / d_i
    A = unknot_algebra(sigma.N, "rationals", sigma)
    for i, (e, (lam, m)) in enumerate(zip(crt_idempotents(sigma), sigma.entries)):
        dec = [Fraction(1)]
        for _ in range(m - 1):
            dec = poly_mul(dec, [-lam, 1])
        elem = A.from_poly(poly_mul(e, dec))
        assert A.apply_counit(elem) == 1 / twisting_scalar(sigma, i)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_undeformed_dotted_sphere(N):
    A = unknot_algebra(N)
    assert A.apply_counit(A.power(N - 1)) == 1
    assert all(A.apply_counit(A.power(a)) == 0 for a in range(N - 1))


def test_comult_of_one():
    A = unknot_algebra(2)
    assert A.comult[0] == {(0, 1): 1, (1, 0): 1}
    E = unknot_algebra(2, "equivariant")
    R, (e1, e2) = equivariant_ring(2)
    assert E.comult[0] == {(0, 1): R.one, (1, 0): R.one, (0, 0): -e1}
    assert E.comult[1] == {(1, 1): R.one, (0, 0): -e2}


@pytest.mark.parametrize("A", [unknot_algebra(N) for N in (1, 2, 3, 5)]
                         + [unknot_algebra(N, "equivariant") for N in (1, 2, 3)],
                         ids=lambda A: "%s-%d" % (A.mode, A.N))
def test_axioms_fixed(A):
    assert frobenius_axiom_violations(A) == []


@settings(max_examples=25, deadline=None)
@given(multisets())
def test_axioms_deformed(sigma):
    assert frobenius_axiom_violations(unknot_algebra(sigma.N, "rationals", sigma)) == []


def test_axiom_checker_detects_damage():
    A = unknot_algebra(2)
    A.comult[1] = {(1, 1): 2}
    assert "counit" in frobenius_axiom_violations(A)
    B = unknot_algebra(2)
    B.mult[(1, 1)] = {0: 1}
    assert frobenius_axiom_violations(B)


def test_specialize_examples():
    E = unknot_algebra(2, "equivariant")
    S = specialize(E, [1, 0])
    D = unknot_algebra(2, "rationals", [0, 1])
    assert (S.relation, S.mult, S.comult) == (D.relation, D.mult, D.comult)
    Z = specialize(E, [0, 0])
    U = unknot_algebra(2)
    assert Z.mode == "integers" and (Z.mult, Z.comult, Z.counit) == (U.mult, U.comult, U.counit)
    S2 = specialize(unknot_algebra(3, "equivariant"), DeformationMultiset([(0, 2), 1]))
    D2 = unknot_algebra(3, "rationals", DeformationMultiset([(0, 2), 1]))
    assert (S2.mult, S2.comult) == (D2.mult, D2.comult)
    with pytest.raises(ValueError):
        specialize(E, [1])
    R, (e1, e2) = equivariant_ring(2)
    with pytest.raises(ValueError):
        specialize(e1 * e2, [1, None])


def test_elementary_symmetric():
    assert elementary_symmetric([0, 1]) == [1, 0]
    assert elementary_symmetric([1, 2, 3]) == [6, 11, 6]


@settings(max_examples=10, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=5),
       rationals, rationals)
def test_specialize_commutes_with_reduction(coeffs, a, b):
    # random element sum c e1^i e2^j X^k, reduced then specialized vs
    # specialized then reduced
    if a == b:
        return
    E = unknot_algebra(2, "equivariant")
    R, (e1, e2) = equivariant_ring(2)
    sigma = DeformationMultiset([a, b])
    D = unknot_algebra(2, "rationals", sigma)
    poly = [R.zero] * 4
    for c, i, k in coeffs:
        poly[k] += c * e1 ** i * e2 ** (2 - i)
    reduced = E.from_poly(poly)
    left = {k: v for k, v in specialize(reduced, sigma).items()}
    vals = elementary_symmetric(sigma.roots())
    right = D.from_poly([specialize(p, vals) for p in poly])
    assert left == right


def test_json_is_deterministic():
    A = unknot_algebra(2, "rationals", [Fraction(1, 2), 3])
    assert A.dumps() == unknot_algebra(2, "rationals", [Fraction(1, 2), 3]).dumps()
    assert A.to_json()["relation"] == ["-3/2", "7/2"]
