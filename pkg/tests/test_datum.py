import itertools
import random
import warnings
from math import factorial

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

import helpers
from hypertoric import datum as dt
from hypertoric import exact_linalg as el
from hypertoric import matroid as mt
from hypertoric.arrangement import omin_matrix
from hypertoric.errors import (
    BoundTooSmall,
    CokernelNotFree,
    DimensionMismatch,
    IncompleteGenerators,
    InvalidInput,
    NotSurjective,
    NotUnimodular,
    UnsupportedGeneratorForm,
)
from hypertoric.graphs import Graph

RG = dt.RingGenerator


def surface(m):
    """``[I_m | -1]``, whose Gale dual is the all-ones column."""
    A = np.zeros((m, m + 1), dtype=object)
    for i in range(m):
        A[i, i], A[i, m] = 1, -1
    return A


class TestConstruction:
    def test_all_ones_row(self):
        D = dt.from_matrix_a([[1, 1, 1]])
        assert (D.n, D.d) == (3, 1)
        assert not np.any(el.matmul(D.A, D.B))
        assert D.multiplicities == (1, 1, 1)
        assert dt.dimension(D) == 4

    def test_rejects_bad_matrices(self):
        with pytest.raises(NotSurjective):
            dt.from_matrix_a([[2, 0], [0, 1]])
        with pytest.raises(NotUnimodular):
            dt.from_matrix_a([[1, 2]])
        with pytest.raises(InvalidInput):
            dt.from_matrix_b([[1, 1], [1, 1]])
        with pytest.raises(CokernelNotFree):
            dt.from_matrix_b([[2], [2]])
        with pytest.raises(NotUnimodular):
            dt.from_matrix_b([[1], [2]])

    def test_zero_rows_of_b_are_dropped(self):
        D = dt.from_matrix_a([[1, 0, 0], [0, 1, 1]])
        assert D.dropped_rows == (0,)
        assert (D.n, D.d) == (2, 1)
        assert D.multiplicities == (2,)
        assert el.is_surjective_over_Z(D.A)
        assert not np.any(el.matmul(D.A, D.B))

    def test_identity_reduces_to_a_point(self):
        D = dt.from_matrix_a(el.identity(3))
        assert (D.n, D.d) == (0, 0) and dt.dimension(D) == 0
        assert dt.namikawa_weyl(D).order == 1

    def test_from_matrix_b_round_trip(self):
        D = dt.from_matrix_a(omin_matrix(2, 1, 1))
        E = dt.from_matrix_b(D.B)
        assert mt.is_isomorphic(D.matroid, E.matroid) is not None
        assert E.reduced == D.reduced

    def test_graph_datum(self):
        D = dt.from_graph(Graph([(0, 1), (1, 2), (2, 0)]))
        assert (D.n, D.d) == (3, 2)
        assert D.multiplicities == (3,)
        assert str(dt.namikawa_weyl(D)) == "S3"

    def test_lawrence_lift_is_exact(self):
        D = dt.from_matrix_a(omin_matrix(2, 1, 1))
        Ah, Bh = dt.lawrence_lift(D.A, D.B)
        assert Ah.shape == (D.d, 2 * D.n) and Bh.shape == (2 * D.n, 2 * D.n - D.d)
        assert not np.any(el.matmul(Ah, Bh))
        assert el.lattices_equal(Bh, el.kernel_basis(Ah))


class TestInvariants:
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_surface_weyl_group(self, m):
        D = dt.from_matrix_a(surface(m))
        W = dt.namikawa_weyl(D)
        assert W.multiplicities == (m + 1,) and W.order == factorial(m + 1)
        assert [s.label for s in dt.codim2_slices(D)] == [f"A_{m}"]

    def test_omin_weyl_group_and_slices(self):
        D = dt.from_matrix_a(omin_matrix(3, 2, 1))
        W = dt.namikawa_weyl(D)
        assert W.multiplicities == (3, 2, 1) and W.order == 12
        assert sorted(s.label for s in dt.codim2_slices(D)) == ["A_1", "A_2"]

    def test_flats_of_omin(self):
        D = dt.from_matrix_a(omin_matrix(2, 1, 1))
        F = dt.flats(D)
        assert [(f.rank, f.stratum_dim) for f in F] == [(0, 4), (1, 2), (1, 2), (1, 2), (2, 0)]
        rank_one = {f.F: f.slice.multiplicities for f in F if f.rank == 1}
        # B rows: (1,0) (0,1) (1,0) (-1,-1)
        assert rank_one == {(0, 2): (2,), (1,): (1,), (3,): (1,)}
        assert F[-1].slice.n == D.n

    @given(st.integers(0, 10_000))
    def test_slice_dimension_is_twice_the_rank(self, seed):
        D = dt.from_matrix_a(helpers.random_unimodular(random.Random(seed), max_vertices=4, max_edges=6))
        for f in dt.flats(D):
            assert dt.dimension(f.slice) == 2 * f.rank
            assert f.stratum_dim + dt.dimension(f.slice) == dt.dimension(D)


def brute_generators(B, bound):
    """Irreducible elements of ``{(u, v) in N^2n : u - v in Im B}`` up to total degree ``bound``."""
    B = el.int_matrix(B)
    n = B.shape[0]
    elems = []
    for deg in range(1, bound + 1):
        for combo in itertools.combinations_with_replacement(range(2 * n), deg):
            e = [0] * (2 * n)
            for c in combo:
                e[c] += 1
            u, v = e[:n], e[n:]
            if el.lattice_contains(B, [a - b for a, b in zip(u, v)]):
                elems.append(tuple(e))
    elem_set = set(elems)
    irred = []
    for e in elems:
        reducible = False
        for f in elems:
            if sum(f) >= sum(e):
                break
            g = tuple(a - b for a, b in zip(e, f))
            if min(g) >= 0 and g in elem_set:
                reducible = True
                break
        if not reducible:
            irred.append(e)
    return {(e[:n], e[n:]) for e in irred}


class TestRingGenerators:
    def test_omin_111_at_bound_two(self):
        D = dt.from_matrix_a([[1, 1, 1]])
        gens = dt.ring_generators(D, degree_bound=2)
        labels = {g.label for g in gens}
        assert labels == {f"z{i}w{j}" for i in range(1, 4) for j in range(1, 4)}
        assert all(g.degree == 2 for g in gens)

    @pytest.mark.parametrize(
        "A",
        [
            [[1, 1, 1]],
            omin_matrix(2, 1, 1),
            omin_matrix(1, 1, 2),
            surface(2),
            [[1, 0, 0], [0, 1, 1]],
            [[1, 1, 0, 0], [0, 0, 1, 1]],
        ],
    )
    def test_against_semigroup_oracle(self, A):
        D = dt.from_matrix_a(A)
        n = D.source_b.shape[0]
        bound = 4 if n <= 4 else 3
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            gens = dt.ring_generators(D, degree_bound=bound)
        ours = {(g.z_exponents, g.w_exponents) for g in gens}
        assert ours == brute_generators(D.source_b, bound)

    def test_sorted_by_degree(self):
        gens = dt.ring_generators(dt.from_matrix_a(surface(3)))
        degs = [g.degree for g in gens]
        assert degs == sorted(degs)
        assert {g.label for g in gens if g.degree == 4} == {"z1z2z3z4", "w1w2w3w4"}

    def test_bound_warnings(self):
        D = dt.from_matrix_a([[1, 1, 1]])
        with pytest.warns(BoundTooSmall):
            dt.ring_generators(D, degree_bound=1)
        with pytest.warns(IncompleteGenerators):
            dt.ring_generators(dt.from_matrix_a(omin_matrix(2, 2, 1)), degree_bound=3)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            dt.ring_generators(dt.from_matrix_a(surface(3)), degree_bound=4)

    def test_unit_vector_in_image_kills_quadric(self):
        # zero column of A: e_1 lies in Im B, so z_1 and w_1 are generators
        D = dt.from_matrix_a([[0, 1, 1]])
        labels = {g.label for g in dt.ring_generators(D, degree_bound=2)}
        assert {"z1", "w1"} <= labels and "z1w1" not in labels


def sympy_bracket(g1, g2, n):
    z = sympy.symbols(f"z1:{n + 1}")
    w = sympy.symbols(f"w1:{n + 1}")

    def mono(g):
        return sympy.Mul(*[z[i] ** g.z_exponents[i] * w[i] ** g.w_exponents[i] for i in range(n)])

    F, G = mono(g1), mono(g2)
    pb = sum(sympy.diff(F, z[i]) * sympy.diff(G, w[i]) - sympy.diff(F, w[i]) * sympy.diff(G, z[i]) for i in range(n))
    return sympy.expand(pb), mono


class TestPoissonBracket:
    def test_quadrics_commute(self):
        assert dt.poisson_bracket(RG.quadric(0, 3), RG.quadric(1, 3)) == []

    def test_f_beta_against_quadric(self):
        (t,) = dt.poisson_bracket(RG.f((1, -1, 0)), RG.quadric(0, 3))
        assert t.coefficient == 1 and t.numerator == (RG.f((1, -1, 0)),) and t.denominator is None
        (t,) = dt.poisson_bracket(RG.quadric(0, 3), RG.f((1, -1, 0)))
        assert t.coefficient == -1

    def test_f_beta_pair(self):
        (t,) = dt.poisson_bracket(RG.f((1, -1, 0)), RG.f((0, 1, -1)))
        assert t.coefficient == -1
        assert t.denominator == RG.quadric(1, 3)
        assert t.monomial() == ((1, 0, 0), (0, 0, 1))

    def test_unsupported_form(self):
        with pytest.raises(UnsupportedGeneratorForm):
            dt.poisson_bracket(RG((2, 0), (1, 0)), RG.quadric(0, 2))

    @given(st.integers(0, 10_000))
    def test_matches_symbolic_bracket(self, seed):
        rng = random.Random(seed)
        D = dt.from_matrix_a(helpers.random_unimodular(rng, max_vertices=4, max_edges=5))
        n = D.source_b.shape[0]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            gens = dt.ring_generators(D, degree_bound=4)
        g1, g2 = rng.choice(gens), rng.choice(gens)
        expected, mono = sympy_bracket(g1, g2, n)
        got = sum(
            (t.coefficient * sympy.Mul(*[mono(g) for g in t.numerator]) / (mono(t.denominator) if t.denominator else 1)
             for t in dt.poisson_bracket(g1, g2)),
            sympy.Integer(0),
        )
        assert sympy.simplify(got - expected) == 0


class TestDegreeTwo:
    @pytest.mark.parametrize("ls", [(1,), (2,), (3,), (1, 1), (2, 1), (3, 2), (1, 1, 1), (3, 2, 1), (3, 3, 3)])
    def test_block_all_ones(self, ls):
        A = dt.block_ones_matrix([l + 1 for l in ls])
        assert dt.degree_two_test(dt.from_matrix_a(A)) == tuple(sorted(ls, reverse=True))

    def test_omin_211_is_not_nilpotent(self):
        assert dt.degree_two_test(dt.from_matrix_a(omin_matrix(2, 1, 1))) is None

    def test_higher_surfaces_are_not_nilpotent(self):
        assert dt.degree_two_test(dt.from_matrix_a(surface(2))) is None

    def test_point(self):
        assert dt.degree_two_test(dt.from_matrix_a(el.identity(2))) == ()

    def test_invariant_under_equivalence(self, rng):
        A = dt.block_ones_matrix([3, 2])
        for _ in range(5):
            P = helpers.random_gl(rng, 2)
            Dm = helpers.random_signed_permutation(rng, 5)
            assert dt.degree_two_test(dt.from_matrix_a(el.matmul(el.matmul(P, A), Dm))) == (2, 1)


def test_is_generic():
    D = dt.from_matrix_a([[1, 1, 1]])
    assert dt.is_generic([1], D) and not dt.is_generic([0], D)
    # columns of A_{2,1,1} span the lines through (1,0), (0,1) and (1,1)
    E = dt.from_matrix_a(omin_matrix(2, 1, 1))
    cols = [tuple(int(x) for x in E.source_a[:, j]) for j in range(E.source_a.shape[1])]
    for c in cols:
        assert not dt.is_generic(list(c), E)
    assert dt.is_generic([1, 3], E) == all(c[0] * 3 - c[1] != 0 for c in cols)
    with pytest.raises(DimensionMismatch):
        dt.is_generic([1, 2], D)


def test_generic_sign_vectors_flip_with_alpha():
    from hypertoric.arrangement import chamber_of, from_columns

    arr = from_columns(omin_matrix(2, 2, 1))
    s = chamber_of([1, 2, 5], arr)
    assert s is not None and chamber_of([-1, -2, -5], arr) == tuple(-x for x in s)
    assert chamber_of([0, 0, 0], arr) is None


@given(st.integers(0, 10_000))
def test_gale_duality_rank_identity(seed):
    rng = random.Random(seed)
    A = helpers.random_unimodular(rng)
    B = el.kernel_basis(A)
    n = A.shape[1]
    I = [i for i in range(n) if rng.random() < 0.5]
    assert dt.gale_duality_holds(A, B, I)
