"""Deciding when two hypertoric varieties are isomorphic, and naming the small ones.

Two data give isomorphic conical symplectic varieties exactly when the
vector matroids of their reduced ``A`` matrices are isomorphic, so every
decision here goes through ``matroid.isomorphisms``.  Explicit witnesses
``A' = P A D`` are searched for separately and only for small ``n``.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exact_linalg as el
from . import matroid as mt
from .datum import HypertoricDatum, from_graph, from_matrix_a
from .errors import (
    BudgetExceeded,
    NotDimensionFour,
    NotDimensionSix,
    UnimodularityViolation,
    VerificationFailed,
)
from .graphs import Graph

WITNESS_MAX_N = 10
WITNESS_BUDGET = 1_000_000

CATALOG_B: dict[int, list[list[int]]] = {
    1: [[1, 0], [0, 1]],
    2: [[1, 0], [0, 1], [1, 1]],
    3: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    4: [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]],
    5: [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]],
    6: [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1]],
    7: [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [1, 1, 1]],
}

# graphs whose cycle matroids match the catalog rows above
CATALOG_GRAPHS: dict[int, Graph] = {
    1: Graph([(0, 1), (1, 2)]),
    2: Graph([(0, 1), (1, 2), (0, 2)]),
    3: Graph([(0, 1), (1, 2), (2, 3)]),
    4: Graph([(0, 1), (1, 2), (1, 3), (2, 3)]),
    5: Graph([(0, 1), (1, 2), (2, 3), (3, 0)]),
    6: Graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
    7: Graph([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
}


@lru_cache(maxsize=None)
def catalog_matroids() -> dict[int, mt.Matroid]:
    """``M(B_i^T)`` for the seven catalog matrices, checked pairwise non-isomorphic."""
    ms = {i: mt.from_matrix(el.int_matrix(rows).T) for i, rows in CATALOG_B.items()}
    for i, j in itertools.combinations(ms, 2):
        if ms[i].n == ms[j].n and mt.is_isomorphic(ms[i], ms[j]) is not None:
            raise VerificationFailed(f"catalog entries {i} and {j} are isomorphic")
    return ms


@dataclass(frozen=True)
class ClassLabel:
    """Isomorphism class name.

    ``kind`` is ``SurfaceProduct``, ``OminTriple``, ``Catalog6`` or
    ``Other``.  ``multiplicities`` follow the catalog element order after
    choosing the lexicographically greatest assignment; for the first two
    kinds that is simply descending order.
    """

    kind: str
    multiplicities: tuple[int, ...] = ()
    index: int | None = None
    fingerprint: str | None = None

    def __str__(self) -> str:
        ms = ",".join(str(m) for m in self.multiplicities)
        if self.kind == "Catalog6":
            return f"Catalog6{{{self.index}; {ms}}}"
        if self.kind == "Other":
            return f"Other{{{self.fingerprint}}}"
        return f"{self.kind}{{{ms}}}"

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "multiplicities": list(self.multiplicities)}
        if self.index is not None:
            out["index"] = self.index
        if self.fingerprint is not None:
            out["fingerprint"] = self.fingerprint
        return out


def _datum(A) -> HypertoricDatum:
    return A if isinstance(A, HypertoricDatum) else from_matrix_a(A)


def isomorphism(A, A2) -> tuple[int, ...] | None:
    """Ground bijection between the reduced matroids ``M(A) -> M(A')``, or None."""
    D1, D2 = _datum(A), _datum(A2)
    if (D1.n, D1.d) != (D2.n, D2.d):
        return None
    return mt.is_isomorphic(D1.matroid, D2.matroid)


def isomorphic(A, A2) -> bool:
    """True iff ``Y(A, 0)`` and ``Y(A', 0)`` are isomorphic as conical symplectic varieties."""
    return isomorphism(A, A2) is not None


@dataclass(frozen=True)
class EquivalenceWitness:
    """``A' = P A D`` with ``P`` unimodular and ``D`` a signed permutation matrix."""

    P: np.ndarray
    D: np.ndarray

    def holds(self, A, A2) -> bool:
        A, A2 = el.int_matrix(A), el.int_matrix(A2)
        lhs = el.matmul(el.matmul(self.P, A), self.D)
        return lhs.shape == A2.shape and bool(np.all(lhs == A2)) and abs(el.det(self.P)) == 1


def _rational_inverse(M: np.ndarray) -> list[list[Fraction]] | None:
    k = M.shape[0]
    rows = [[Fraction(int(x)) for x in M[i]] + [Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    pivots = el._rref_inplace(rows, k)
    if len(pivots) != k:
        return None
    return [row[k:] for row in rows]


def equivalence_witness(A, A2, max_n: int = WITNESS_MAX_N, budget: int = WITNESS_BUDGET) -> EquivalenceWitness | None:
    """Search for ``(P, D)`` with ``A' = P A D``.

    For each matroid isomorphism ``phi`` and each sign pattern on a basis
    ``J`` of ``A'``, ``P`` is forced as ``A'_J ((A D)_J)^-1`` and the other
    signs are forced column by column.  None means no witness exists;
    ``BudgetExceeded`` means the search was cut short.
    """
    A, A2 = el.int_matrix(A), el.int_matrix(A2)
    if A.shape != A2.shape:
        return None
    d, n = A.shape
    if n > max_n:
        raise BudgetExceeded(f"witness search is limited to n <= {max_n}, got {n}")
    M1, M2 = mt.from_matrix(A), mt.from_matrix(A2)
    trials = 0
    # cheapest witnesses first: P = I and D matching columns up to sign
    for phi in mt.isomorphisms(M1, M2):
        trials += 1
        if trials > budget:
            raise BudgetExceeded(f"witness search exceeded {budget} trials")
        D = _signed_match(A, A2, phi)
        if D is not None:
            return EquivalenceWitness(el.identity(d), D)
    J = mt.elements_of(M2.bases[0]) if d else []
    for phi in mt.isomorphisms(M1, M2):
        inv = [0] * n
        for i, f in enumerate(phi):
            inv[f] = i
        pre = [inv[j] for j in J]
        for signs in itertools.product((1, -1), repeat=len(J)):
            trials += 1
            if trials > budget:
                raise BudgetExceeded(f"witness search exceeded {budget} trials")
            W = _try_witness(A, A2, phi, inv, J, pre, signs)
            if W is not None:
                return W
    return None


def _signed_match(A, A2, phi) -> np.ndarray | None:
    n = A.shape[1]
    D = np.zeros((n, n), dtype=object)
    for i in range(n):
        col, target = list(A[:, i]), list(A2[:, phi[i]])
        if col == target:
            D[i, phi[i]] = 1
        elif [-x for x in col] == target:
            D[i, phi[i]] = -1
        else:
            return None
    return D


def _try_witness(A, A2, phi, inv, J, pre, signs) -> EquivalenceWitness | None:
    d, n = A.shape
    if d:
        AJ = np.array([[A[r, i] * s for i, s in zip(pre, signs)] for r in range(d)], dtype=object)
        Minv = _rational_inverse(AJ)
        if Minv is None:
            return None
        P = []
        for r in range(d):
            row = []
            for c in range(d):
                v = sum(Fraction(int(A2[r, J[k]])) * Minv[k][c] for k in range(d))
                if v.denominator != 1:
                    return None
                row.append(int(v))
            P.append(row)
        P = el.int_matrix(P)
        if abs(el.det(P)) != 1:
            return None
        PA = el.matmul(P, A)
    else:
        P = np.empty((0, 0), dtype=object)
        PA = A
    sign_of = dict(zip(pre, signs))
    D = np.zeros((n, n), dtype=object)
    for i in range(n):
        target = [int(x) for x in A2[:, phi[i]]]
        col = [int(x) for x in PA[:, i]]
        if i in sign_of:
            s = sign_of[i]
            if [s * x for x in col] != target:
                return None
        elif col == target:
            s = 1
        elif [-x for x in col] == target:
            s = -1
        else:
            return None
        D[i, phi[i]] = s
    return EquivalenceWitness(P, D)


# ---------------------------------------------------------------------------
# catalog labels


def _transported(datum: HypertoricDatum, index: int) -> tuple[int, ...] | None:
    """Lexicographically greatest multiplicity tuple carried to catalog entry ``index``."""
    target = catalog_matroids()[index]
    source = mt.from_matrix(datum.reduction.T)
    if source.n != target.n:
        return None
    ms = datum.multiplicities
    best = None
    for phi in mt.isomorphisms(source, target):
        out = [0] * target.n
        for k, f in enumerate(phi):
            out[f] = ms[k]
        t = tuple(out)
        if best is None or t > best:
            best = t
    return best


def classify4(A) -> ClassLabel:
    """Label of a 4-dimensional ``Y(A, 0)``: a product of two surface singularities or an ``Omin``."""
    D = _datum(A)
    if D.n - D.d != 2:
        raise NotDimensionFour(f"dimension is {2 * (D.n - D.d)}, not 4")
    for index, kind in ((1, "SurfaceProduct"), (2, "OminTriple")):
        ms = _transported(D, index)
        if ms is not None:
            return ClassLabel(kind, ms)
    raise UnimodularityViolation("reduced B matches no 4-dimensional catalog entry")


def classify6(A) -> ClassLabel:
    D = _datum(A)
    if D.n - D.d != 3:
        raise NotDimensionSix(f"dimension is {2 * (D.n - D.d)}, not 6")
    for index in range(3, 8):
        ms = _transported(D, index)
        if ms is not None:
            return ClassLabel("Catalog6", ms, index=index)
    raise UnimodularityViolation("reduced B matches no 6-dimensional catalog entry")


def fingerprint(M: mt.Matroid) -> str:
    """Short digest of permutation-invariant matroid data."""
    return hashlib.sha256(repr(M.invariants()).encode()).hexdigest()[:16]


def classify(A) -> ClassLabel:
    """``classify4``/``classify6`` where they apply, otherwise an ``Other`` fingerprint label."""
    D = _datum(A)
    k = D.n - D.d
    if k == 2:
        return classify4(D)
    if k == 3:
        return classify6(D)
    return ClassLabel("Other", tuple(sorted(D.multiplicities, reverse=True)), fingerprint=fingerprint(D.matroid))


def quiver_iso(G1, G2) -> bool:
    """True iff the toric quiver varieties of the two graphs are isomorphic.

    Disconnected graphs are accepted, so cleaving a cut vertex is a valid move.
    """
    D1 = from_graph(G1 if isinstance(G1, Graph) else Graph(G1), allow_disconnected=True)
    D2 = from_graph(G2 if isinstance(G2, Graph) else Graph(G2), allow_disconnected=True)
    return isomorphic(D1, D2)
