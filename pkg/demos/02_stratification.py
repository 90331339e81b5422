"""Strata, slices and the Weyl group of Omin({2,2,1}).

The parallel classes of the Gale dual decide almost everything here: a class
of size l gives a codimension-two stratum with an A_{l-1} surface slice, and
the Namikawa-Weyl group is the product of the symmetric groups on the classes.
"""
from pathlib import Path

from hypertoric import datum as dt
from hypertoric.io import read_matrix

HERE = Path(__file__).parent
D = dt.from_matrix_a(read_matrix(HERE / "data" / "omin_221.mat"))

print("reduced expression:")
for row, mult in D.reduced:
    print(f"  {row}  x{mult}")

W = dt.namikawa_weyl(D)
print(f"W = {W}, |W| = {W.order}")

print("codimension-two slices:")
for s in dt.codim2_slices(D):
    print(f"  rows {s.rows}: {s.label}")

# %% Every flat F of the multi-arrangement H_B is a stratum of dimension 2(n - d - rank F).
print(f"{'flat':>18s} {'rank':>5s} {'dim':>4s}  slice multiplicities")
for st in dt.flats(D):
    print(f"{str(list(st.F)):>18s} {st.rank:>5d} {st.stratum_dim:>4d}  {sorted(st.slice.multiplicities, reverse=True)}")
