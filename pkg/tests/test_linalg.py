from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import QQ, ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors
from sympy.polys.matrices import DomainMatrix

from khlasagna.linalg import integer_columns, invariant_factors, rank, smith_diagonal


@st.composite
def sparse_matrices(draw, entries=st.integers(-4, 4)):
    rows = draw(st.integers(1, 7))
    cols = draw(st.integers(1, 7))
    dense = [[draw(st.one_of(st.just(0), st.just(0), entries)) for _ in range(cols)] for _ in range(rows)]
    return dense


def to_columns(dense):
    rows, cols = len(dense), len(dense[0])
    return [{r: dense[r][c] for r in range(rows) if dense[r][c] != 0} for c in range(cols)]


@settings(max_examples=150, deadline=None)
@given(sparse_matrices(entries=st.fractions(min_value=-3, max_value=3, max_denominator=3)))
def test_rank_against_sympy(dense):
    dm = DomainMatrix([[QQ(x.numerator, x.denominator) for x in row] for row in dense],
                      (len(dense), len(dense[0])), QQ)
    assert rank(to_columns(dense)) == dm.rank()


@settings(max_examples=150, deadline=None)
@given(sparse_matrices())
def test_smith_against_sympy(dense):
    cols = to_columns(dense)
    diag = smith_diagonal(cols)
    M = Matrix(dense)
    assert len(diag) == M.rank()
    expected = [abs(int(x)) for x in sympy_invariant_factors(M, domain=ZZ) if x != 0]
    assert invariant_factors(diag) == [d for d in expected if d != 1]


def test_smith_known_example():
    # diag(2, 6) hidden by unimodular mixing
    dense = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert invariant_factors(smith_diagonal(to_columns(dense))) == [2, 6, 12]


def test_smith_rejects_fractions():
    with pytest.raises(ValueError):
        smith_diagonal([{0: Fraction(1, 2)}])


def test_integer_columns():
    cols = [{0: Fraction(1, 2), 1: Fraction(1, 3)}, {1: Fraction(2, 1)}]
    assert integer_columns(cols) == [{0: 3, 1: 2}, {1: 2}]


def test_empty():
    assert rank([]) == 0 and smith_diagonal([]) == [] and rank([{}, {}]) == 0
    assert invariant_factors([1, 1]) == []


def test_invariant_factors_normalize():
    assert invariant_factors([4, 6]) == [2, 12]
    assert invariant_factors([3, 1, 2]) == [6]
