import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khlasagna.corpus import fixture_names, load_fixture
from khlasagna.linkdiag import (PDError, SublinkSelector, add_kink, cable_unknot, components,
                                disjoint_union, from_braid, mirror, parse_braid, parse_diagram,
                                parse_pd, reverse_components, seifert_data, sublink, writhe)
from oracles import brute_force_signs

HOPF = "PD[X(1,3,2,4), X(3,1,4,2)]"
RIGHT_TREFOIL = "PD[X(1,2,3,4), X(2,5,6,3), X(5,1,4,6)]"

braid_words = st.integers(2, 4).flatmap(
    lambda w: st.tuples(st.just(w), st.lists(
        st.integers(1, w - 1).flatmap(lambda g: st.sampled_from([g, -g])), min_size=1, max_size=6)))


def linking_number(D, a, b):
    total = 0
    for c in range(D.n_crossings):
        if set(D.crossing_components(c)) == {a, b}:
            total += D.signs[c]
    return total // 2


def test_parse_unknot():
    D = parse_pd("PD[]; O(1)")
    assert (D.n_crossings, D.writhe, D.n_components) == (0, 0, 1)


def test_parse_hopf():
    D = parse_pd(HOPF)
    assert (D.n_crossings, D.writhe, D.n_components) == (2, 2, 2)
    assert D.signs in brute_force_signs(D.crossings)


def test_parse_trefoil():
    D = parse_pd(RIGHT_TREFOIL)
    assert (D.n_crossings, D.writhe, D.n_components) == (3, 3, 1)


@pytest.mark.parametrize("name", fixture_names())
def test_signs_match_brute_force(name):
    D = load_fixture(name)
    options = brute_force_signs(D.crossings)
    if D.n_components <= 1:
        # a knot has one sign vector whatever its orientation
        assert options == {D.signs} or not D.crossings
    else:
        assert D.signs in options


@settings(max_examples=40, deadline=None)
@given(braid_words)
def test_braid_signs_and_roundtrip(wb):
    width, word = wb
    D = from_braid(width, word)
    assert D.writhe == sum(1 if g > 0 else -1 for g in word)
    if D.crossings:
        assert D.signs in brute_force_signs(D.crossings)
    E = parse_pd(D.to_pd())
    assert E.to_pd() == D.to_pd()
    if D.n_components == 1:
        assert E.signs == D.signs


@pytest.mark.parametrize("text", ["PD[X(1,2,3)]", "PD[X(1,2,3,4)]", "PD[X(1,1,1,1)]", "foo",
                                  "PD[X(1,2,2,1), Y(3,3,4,4)]"])
def test_malformed_pd(text):
    with pytest.raises(PDError):
        parse_pd(text)


def test_braid_text():
    D = parse_braid("BR[2; s1 s1 s1]")
    assert D.to_pd() == from_braid(2, [1, 1, 1]).to_pd()
    assert parse_diagram("BR[3; 1 -2]").writhe == 0
    with pytest.raises(PDError):
        parse_braid("BR[2; x1]")


def test_writhe_examples():
    assert writhe(parse_pd("PD[]; O(1)")) == 0
    H = parse_pd(HOPF)
    assert writhe(H) == 2
    assert writhe(mirror(H)) == -2


@pytest.mark.parametrize("name", fixture_names())
def test_mirror(name):
    D = load_fixture(name)
    M = mirror(D)
    assert M.writhe == -D.writhe
    assert M.n_components == D.n_components
    assert mirror(M).signs == D.signs


def test_seifert_examples():
    assert seifert_data(parse_pd(RIGHT_TREFOIL)) == (2, -1)
    assert seifert_data(parse_pd("PD[]; O(1)")) == (1, 1)
    assert seifert_data(parse_pd(HOPF)) == (2, 0)


def test_disjoint_union_additivity():
    for a in ("trefoil_right", "hopf_neg", "unknot"):
        for b in ("figure8", "kink_pos", "unlink2"):
            Da, Db = load_fixture(a), load_fixture(b)
            U = disjoint_union(Da, Db)
            assert U.writhe == Da.writhe + Db.writhe
            assert seifert_data(U)[0] == seifert_data(Da)[0] + seifert_data(Db)[0]
            assert U.n_components == Da.n_components + Db.n_components


def test_sublink_examples():
    H = parse_pd(HOPF)
    one = sublink(H, SublinkSelector([0]))
    assert (one.n_crossings, one.writhe, one.n_components) == (0, 0, 1)
    assert sublink(H, SublinkSelector(components(H))).to_pd() == H.to_pd()
    T = parse_pd(RIGHT_TREFOIL)
    U = disjoint_union(T, parse_pd("PD[]; O(1)"))
    kept = sublink(U, [0])
    assert kept.to_pd() == T.to_pd()
    with pytest.raises(PDError):
        sublink(H, [5])


def test_sublink_keeps_self_crossings():
    L = cable_unknot(1, 2, 1)
    for c in components(L):
        K = sublink(L, [c])
        # each strand of the cable carries exactly one positive curl
        assert (K.n_crossings, K.writhe) == (1, 1)


def test_cable_examples():
    K = cable_unknot(1, 1, 0)
    assert (K.n_crossings, K.writhe) == (1, 1)
    H = cable_unknot(1, 2, 0)
    assert (H.n_crossings, H.writhe, H.n_components) == (4, 4, 2)
    assert cable_unknot(1, 1, 1).writhe == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.integers(0, 3), st.integers(0, 3))
def test_cable_counts(f, n, m):
    if n + m == 0:
        with pytest.raises(PDError):
            cable_unknot(f, n, m)
        return
    D = cable_unknot(f, n, m)
    assert D.n_crossings == f * (n + m) ** 2
    assert D.writhe == f * (n - m) ** 2
    assert D.n_components == n + m
    if 0 < D.n_crossings <= 12:
        assert D.signs in brute_force_signs(D.crossings)


def test_cable_orientations():
    # parallel strands link +f, antiparallel ones -f
    assert linking_number(cable_unknot(1, 2, 0), 0, 1) == 1
    assert linking_number(cable_unknot(1, 1, 1), 0, 1) == -1
    assert linking_number(cable_unknot(2, 1, 1), 0, 1) == -2


def test_reverse_components():
    H = parse_pd(HOPF)
    R = reverse_components(H, [0])
    assert R.writhe == -2
    assert reverse_components(H, [0, 1]).signs == H.signs
    assert R.signs in brute_force_signs(R.crossings)


def test_add_kink():
    for name in ("unknot", "trefoil_right", "hopf_pos"):
        D = load_fixture(name)
        for sign in (1, -1):
            K = add_kink(D, sign)
            assert K.writhe == D.writhe + sign
            assert K.n_components == D.n_components
            assert K.signs in brute_force_signs(K.crossings)


def test_json_serialization():
    D = load_fixture("hopf_pos")
    obj = D.to_json()
    assert obj["crossings"] == [[1, 3, 2, 4], [3, 1, 4, 2]]
    assert obj["loops"] == 0 and obj["writhe"] == 2
    assert set(obj["orientations"]) == {"1", "2", "3", "4"}
    assert D.dumps() == load_fixture("hopf_pos").dumps()
