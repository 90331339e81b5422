"""Counting projective crepant resolutions by counting chambers.

The resolutions of Y(A, 0) are in bijection with chambers of H_A modulo the
Namikawa-Weyl group.  Chambers come from the characteristic polynomial via
Zaslavsky: r = (-1)^d chi(-1).
"""
from math import comb

from hypertoric import arrangement as ar
from hypertoric import datum as dt

# %% Omin({l1, l2, 1}) has binom(l1 + l2, l1) resolutions
print(" l1 l2 l3   chi(H_A)                                       r   |W|  resolutions")
for l1, l2, l3 in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (3, 2, 1), (2, 2, 2), (3, 2, 2)]:
    D = dt.from_matrix_a(ar.omin_matrix(l1, l2, l3))
    arr = ar.from_columns(D.A)
    chi = ar.char_poly(arr)
    r = ar.chamber_count(arr)
    W = dt.namikawa_weyl(D).order
    print(f" {l1:2d} {l2:2d} {l3:2d}   {str(chi):45s} {r:5d} {W:5d}  {ar.crepant_resolution_count(D):5d}")

print("closed form for l3 = 1 at (3, 2):", comb(5, 3))

# %% Adding two free coordinates turns H_A into the Edelman-Reiner arrangement,
# and the characteristic polynomial picks up exactly a factor t^2.
er = ar.char_poly(ar.edelman_reiner_arrangement(2, 2, 2))
ha = ar.char_poly(ar.from_columns(ar.omin_matrix(2, 2, 2)))
print("chi(ER(2,2,2))   =", er)
print("t^2 * chi(H_A)   =", ar.CharPoly.monomial(2) * ha)

# %% Three independent ways to get chi; the finite-field count uses a prime
# above the subdeterminant bound, so it agrees with chi(p) exactly.
arr = ar.from_columns(ar.omin_matrix(2, 2, 1))
for method in ("poset", "delres", "ffield"):
    print(f"{method:7s}", ar.char_poly(arr, method=method))
print("points of the complement over F_11:", ar.char_poly_finite_field(arr, 11), "=", ar.char_poly(arr)(11))
