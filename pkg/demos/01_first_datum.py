"""A first hypertoric datum, start to finish.

Run with ``python demos/01_first_datum.py``.  Everything printed is exact.
"""
import numpy as np

from hypertoric import datum as dt
from hypertoric import exact_linalg as el
from hypertoric.io import read_matrix
from pathlib import Path

HERE = Path(__file__).parent

# %% The matrix A = (1 1 1) defines the closure of the minimal nilpotent orbit of sl_3.
A = read_matrix(HERE / "data" / "sl3_min_orbit.mat")
print("A =", A.tolist())
print("surjective over Z:", el.is_surjective_over_Z(A), " unimodular:", el.is_unimodular(A))

# %% Gale dual: the columns of B span ker A, and A B = 0 exactly
D = dt.from_matrix_a(A)
print("B =")
print(D.B)
assert not np.any(el.matmul(D.A, D.B))

# %% Rows of B grouped up to sign; here all three classes are singletons
for row, mult in D.reduced:
    print(f"  class {row} with multiplicity {mult}")
print("dimension:", dt.dimension(D), " Namikawa-Weyl group:", dt.namikawa_weyl(D))

# %% The coordinate ring is generated in degree two.  These nine monomials
# are the entries of a traceless 3x3 matrix of rank at most one.
for g in dt.ring_generators(D, degree_bound=2):
    print(f"  {g.label:6s} degree {g.degree}")

# %% Poisson brackets of two generators, written as Laurent monomials in z_i w_i
gens = dt.ring_generators(D, degree_bound=2)
f = next(g for g in gens if g.label == "z1w2")
q = next(g for g in gens if g.label == "z1w1")
print("{z1w2, z1w1} =", [(t.coefficient, t.monomial()) for t in dt.poisson_bracket(f, q)])

# %% The degree-two test recognises the minimal orbit: one block of three coordinates
print("nilpotent-orbit multiset:", dt.degree_two_test(D))
