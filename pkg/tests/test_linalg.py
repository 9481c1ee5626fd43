"""Exact linear algebra: ranks, kernels, determinants, solving."""
from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pvlab._linalg import (bareiss_det, clear_denominators, det, frac_rref, identity,
                           kernel_basis, matmul, matvec, modp_rank, rank, solve,
                           transpose, zeros)

small_entries = st.integers(min_value=-9, max_value=9)


def small_matrix(max_side: int = 5):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(small_entries, min_size=c, max_size=c),
                               min_size=r, max_size=r)))


@given(small_matrix())
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m).rank()


@given(small_matrix())
@settings(max_examples=60, deadline=None)
def test_modp_rank_never_exceeds_exact_rank(m):
    # A single-prime rank is a one-sided certificate: it can only drop.
    assert modp_rank(m) <= rank(m)


@given(small_matrix())
@settings(max_examples=40, deadline=None)
def test_kernel_vectors_annihilate(m):
    cols = len(m[0])
    basis = kernel_basis(m)
    assert len(basis) == cols - rank(m)
    for v in basis:
        assert all(isinstance(x, int) for x in v)
        assert matvec(m, v) == [0] * len(m)


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small_entries, min_size=n, max_size=n),
                       min_size=n, max_size=n)))
@settings(max_examples=60, deadline=None)
def test_square_determinants_match_sympy(m):
    expected = sympy.Matrix(m).det()
    assert bareiss_det(m) == expected
    assert det(m) == Fraction(int(expected))


def test_rref_shape_and_pivots():
    m = [[2, 4, 6], [1, 2, 3], [0, 0, 5]]
    reduced, pivots = frac_rref(m)
    assert pivots == [0, 2]
    for r, p in enumerate(pivots):
        assert reduced[r][p] == 1
        for other in range(len(reduced)):
            if other != r:
                assert reduced[other][p] == 0


def test_solve_round_trip():
    a = [[2, 1], [1, 3]]
    x = solve(a, [5, 10])
    assert matvec(a, x) == [Fraction(5), Fraction(10)]


def test_solve_rejects_singular():
    with pytest.raises(ValueError):
        solve([[1, 2], [2, 4]], [1, 1])


def test_clear_denominators_primitive():
    v = clear_denominators([Fraction(1, 2), Fraction(2, 3), Fraction(0)])
    assert v == [3, 4, 0]


def test_matrix_helpers():
    a = [[1, 2], [3, 4]]
    assert matmul(a, identity(2)) == a
    assert transpose(a) == [[1, 3], [2, 4]]
    assert zeros(2, 3) == [[0, 0, 0], [0, 0, 0]]


def test_det_multiplicative():
    a = [[1, 2], [3, 4]]
    b = [[0, 1], [1, 1]]
    assert det(matmul(a, b)) == det(a) * det(b)
