"""Toric quiver varieties and the small-dimensional catalog.

Isomorphism of hypertoric varieties is decided by isomorphism of the vector
matroids of A, so graph moves never have to be performed explicitly.
"""
from pathlib import Path

from hypertoric import classify as cl
from hypertoric import datum as dt
from hypertoric.graphs import reduced_incidence
from hypertoric.io import read_graph, read_matrix

HERE = Path(__file__).parent / "data"

# %% Cleaving a cut vertex does not change the variety
bowtie, split = read_graph(HERE / "bowtie.g"), read_graph(HERE / "two_triangles.g")
print("bowtie ~ two triangles:", cl.quiver_iso(bowtie, split))
print("bowtie ~ 4-cycle:      ", cl.quiver_iso(bowtie, read_graph(HERE / "square.g")))

# %% Labels in dimension four and six
for name in ("sl3_min_orbit.mat", "omin_221.mat", "surface_a3.mat"):
    print(f"{name:20s}", cl.classify(read_matrix(HERE / name)))

for i, G in cl.CATALOG_GRAPHS.items():
    if i >= 3:
        # the catalog graphs carry M(B_i^T); their Gale-dual data are the 6-dimensional classes
        D = dt.from_matrix_b(reduced_incidence(G).T)
        print(f"catalog graph {i}: {cl.classify(D)}")

# %% An explicit change of coordinates A' = P A D, found from a matroid isomorphism
W = cl.equivalence_witness([[1, 1, 1]], [[1, -1, 1]])
print("P =", W.P.tolist(), " D =", W.D.tolist())
