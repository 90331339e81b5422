import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from hypertoric import exact_linalg as el
from hypertoric.errors import BudgetExceeded, InvalidInput, NotSurjective, RankDeficient


def small_matrices(max_rows=4, max_cols=5, lo=-4, hi=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    )


def test_int_matrix_rejects_fractional_entries():
    with pytest.raises(InvalidInput):
        el.int_matrix([[1, 0.5]])
    assert el.int_matrix([[1.0, 2]]).tolist() == [[1, 2]]


def test_matmul_with_empty_inner_dimension():
    a = np.empty((2, 0), dtype=object)
    b = np.empty((0, 3), dtype=object)
    assert el.matmul(a, b).tolist() == [[0, 0, 0], [0, 0, 0]]


@given(small_matrices(max_rows=4, max_cols=4))
def test_det_and_rank_match_sympy(rows):
    M = sympy.Matrix(rows)
    assert el.rank(rows) == M.rank()
    if M.rows == M.cols:
        assert el.det(rows) == M.det()


@given(small_matrices())
def test_smith_form_matches_sympy(rows):
    dec = el.smith_form(rows)
    A = el.int_matrix(rows)
    assert np.array_equal(el.matmul(el.matmul(dec.U, A), dec.V), dec.S)
    assert abs(el.det(dec.U)) == 1 and abs(el.det(dec.V)) == 1
    ours = dec.invariant_factors
    theirs = [abs(int(x)) for x in invariant_factors(sympy.Matrix(rows), domain=sympy.ZZ) if x != 0]
    assert ours == theirs
    for a, b in zip(ours, ours[1:]):
        assert b % a == 0


def test_smith_small_example():
    dec = el.smith_form([[2, 0], [0, 3]])
    assert dec.invariant_factors == [1, 6]


@given(small_matrices())
def test_hermite_rows_spans_same_lattice(rows):
    H = el.hermite_rows(rows)
    assert el.lattices_equal(el.int_matrix(rows).T, H.T)
    assert H.shape[0] == el.rank(rows)
    # echelon form with positive pivots, reduced above
    pivots = []
    for r in H:
        p = next(j for j, x in enumerate(r) if x)
        assert r[p] > 0
        pivots.append(p)
    assert pivots == sorted(pivots)
    for i, p in enumerate(pivots):
        for k in range(i):
            assert 0 <= H[k, p] < H[i, p]


@given(small_matrices())
def test_integer_kernel_is_saturated_basis(rows):
    A = el.int_matrix(rows)
    K = el.integer_kernel(A)
    n = A.shape[1]
    assert K.shape == (n, n - el.rank(A))
    if K.shape[1]:
        assert not np.any(el.matmul(A, K))
        # saturated: Z^n / Im K is free
        assert el.cokernel_is_free(K)


def test_kernel_basis_of_all_ones_row():
    B = el.kernel_basis([[1, 1, 1]])
    assert el.matmul(el.int_matrix([[1, 1, 1]]), B).tolist() == [[0, 0]]
    assert el.lattices_equal(B, el.int_matrix([[1, 0], [0, 1], [-1, -1]]))


def test_kernel_basis_requires_surjectivity():
    with pytest.raises(NotSurjective):
        el.kernel_basis([[2, 0], [0, 1]])
    assert el.is_surjective_over_Z([[2, 3]])
    assert not el.is_surjective_over_Z([[2, 4]])


def test_saturation_and_lattice_membership():
    B = el.int_matrix([[2], [2]])
    assert not el.cokernel_is_free(B)
    S = el.saturate_columns(B)
    assert el.lattices_equal(S, el.int_matrix([[1], [1]]))
    assert el.lattice_contains(S, [3, 3])
    assert not el.lattice_contains(B, [1, 1])
    assert not el.lattice_contains(S, [1, 0])


def test_solve_rational():
    x = el.solve_rational([[2, 0], [0, 4]], [1, 1])
    assert [str(v) for v in x] == ["1/2", "1/4"]
    assert el.solve_rational([[1, 1], [1, 1]], [0, 1]) is None


@given(small_matrices(max_rows=3, max_cols=5, lo=-2, hi=2))
def test_unimodular_agrees_with_brute_minors(rows):
    A = el.int_matrix(rows)
    if el.rank(A) < A.shape[0]:
        with pytest.raises(RankDeficient):
            el.is_unimodular(A)
        return
    import helpers

    minors = helpers.all_minors_brute(A)
    assert el.is_unimodular(A) == all(m in (-1, 0, 1) for m in minors)


def test_totally_unimodular_examples():
    assert el.is_totally_unimodular([[1, -1, 0], [0, 1, -1]])
    assert not el.is_totally_unimodular([[1, 1], [1, -1]])
    assert el.is_unimodular([[1, 1, 1]])


def test_minor_budget():
    with pytest.raises(BudgetExceeded):
        el.is_unimodular(el.int_matrix([[1] * 30]), max_cols=24)


@given(small_matrices(max_rows=3, max_cols=3, lo=-3, hi=3))
def test_subdeterminant_bound_dominates_all_minors(rows):
    A = el.int_matrix(rows)
    bound = el.subdeterminant_bound(A)
    m, n = A.shape
    for k in range(1, min(m, n) + 1):
        for R in itertools.combinations(range(m), k):
            for C in itertools.combinations(range(n), k):
                assert abs(el.det(A[np.ix_(R, C)])) <= bound


class TestRationalSubspace:
    def test_canonical_basis_is_independent_of_generators(self):
        U = el.RationalSubspace.span([[1, 1, 0], [0, 1, 1]], 3)
        V = el.RationalSubspace.span([[1, 2, 1], [2, 1, -1], [1, 0, -1]], 3)
        assert U == V and hash(U) == hash(V)

    def test_contains_and_complement(self):
        U = el.RationalSubspace.span([[1, 1, 0]], 3)
        assert U.contains([3, 3, 0]) and not U.contains([1, 0, 0])
        C = U.orthogonal_complement()
        assert C.dim == 2 and C.contains([1, -1, 0]) and C.contains([0, 0, 1])
        assert (U + C) == el.RationalSubspace.whole(3)

    def test_kernel_constructor(self):
        K = el.RationalSubspace.kernel([[1, 1, 1]], 3)
        assert K.dim == 2 and K.contains([1, -1, 0])

    @given(small_matrices(max_rows=3, max_cols=4, lo=-3, hi=3))
    def test_dimension_is_rank(self, rows):
        n = len(rows[0])
        assert el.RationalSubspace.span(rows, n).dim == el.rank(rows)


def test_primitive():
    assert el.primitive([0, -2, 4]) == (0, 1, -2)
    assert el.primitive([0, 0]) == (0, 0)
