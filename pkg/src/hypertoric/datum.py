"""The datum ``(A, B)`` of an affine hypertoric variety ``Y(A, 0)`` and its invariants.

``A`` is a surjective unimodular d x n integer matrix and ``B`` its Gale
dual, so ``0 -> Z^(n-d) -B-> Z^n -A-> Z^d -> 0`` is exact.  Rows of ``B``
that vanish contribute nothing to ``Y(A, 0)`` and are dropped on
construction; every invariant below is computed from the reduced pair.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial, prod
from typing import Iterator, Sequence

import numpy as np

from . import exact_linalg as el
from . import matroid as mt
from .errors import (
    BoundTooSmall,
    CokernelNotFree,
    DimensionMismatch,
    IncompleteGenerators,
    InvalidInput,
    NotUnimodular,
    UnsupportedGeneratorForm,
    VerificationFailed,
)
from .graphs import Graph, reduced_incidence


def _sign_normalized(row: Sequence[int]) -> tuple[int, ...]:
    row = tuple(int(x) for x in row)
    lead = next((x for x in row if x), 0)
    return tuple(-x for x in row) if lead < 0 else row


@dataclass(frozen=True, eq=False)
class HypertoricDatum:
    """Validated pair ``(A, B)`` with its reduced expression.

    ``source_a``/``source_b`` are the matrices as given; ``A``/``B`` are
    the reduced pair obtained by dropping the rows of ``B`` listed in
    ``dropped_rows``.  ``reduced`` lists the distinct rows of ``B`` up to
    sign (first nonzero entry positive, sorted) with their multiplicities,
    and ``classes[k]`` holds the row indices of ``B`` in the k-th class.
    """

    source_a: np.ndarray
    source_b: np.ndarray
    dropped_rows: tuple[int, ...]
    A: np.ndarray
    B: np.ndarray
    reduced: tuple[tuple[tuple[int, ...], int], ...]
    classes: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.B.shape[0]

    @property
    def d(self) -> int:
        return self.n - self.B.shape[1]

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(m for _, m in self.reduced)

    @property
    def reduction(self) -> np.ndarray:
        """The matrix of distinct rows ``b^(k)``, one per parallel class."""
        rows = [list(r) for r, _ in self.reduced]
        return el.int_matrix(rows) if rows else np.empty((0, self.B.shape[1]), dtype=object)

    @cached_property
    def matroid(self) -> mt.Matroid:
        """``M(A)`` of the reduced matrix."""
        return mt.from_matrix(self.A)

    @cached_property
    def gale_matroid(self) -> mt.Matroid:
        """``M(B^T)``, the dual of ``M(A)``."""
        return mt.from_matrix(self.B.T)

    def __repr__(self) -> str:
        prof = ", ".join(str(m) for m in self.multiplicities)
        return f"HypertoricDatum(n={self.n}, d={self.d}, multiplicities=[{prof}])"


def _build(source_a, source_b) -> HypertoricDatum:
    source_a, source_b = el.int_matrix(source_a), el.int_matrix(source_b)
    n = source_b.shape[0]
    dropped = tuple(i for i in range(n) if all(x == 0 for x in source_b[i]))
    keep = [i for i in range(n) if i not in dropped]
    if dropped:
        B = source_b[keep, :] if keep else np.empty((0, source_b.shape[1]), dtype=object)
        A = _cokernel_matrix(B)
    else:
        A, B = source_a, source_b
    groups: dict[tuple[int, ...], list[int]] = {}
    for i in range(B.shape[0]):
        groups.setdefault(_sign_normalized(B[i]), []).append(i)
    order = sorted(groups)
    reduced = tuple((row, len(groups[row])) for row in order)
    classes = tuple(tuple(groups[row]) for row in order)
    return HypertoricDatum(source_a, source_b, dropped, A, B, reduced, classes)


def _cokernel_matrix(B: np.ndarray) -> np.ndarray:
    """A surjective ``A`` whose kernel is the column lattice of ``B``."""
    n = B.shape[0]
    if n == 0:
        return np.empty((0, 0), dtype=object)
    K = el.integer_kernel(B.T)
    return K.T.copy() if K.shape[1] else np.empty((0, n), dtype=object)


def from_matrix_a(A) -> HypertoricDatum:
    """Datum of a surjective unimodular ``A``; ``B`` is its canonical Gale dual."""
    A = el.int_matrix(A)
    B = el.kernel_basis(A)
    if not el.is_unimodular(A):
        raise NotUnimodular("A has a maximal minor outside {-1, 0, 1}")
    return _build(A, B)


def from_matrix_b(B) -> HypertoricDatum:
    """Datum defined by a Gale dual ``B``; some compatible ``A`` is chosen."""
    B = el.int_matrix(B)
    n, k = B.shape
    if el.rank(B) != k:
        raise InvalidInput(f"B has rank {el.rank(B)} but {k} columns")
    if not el.cokernel_is_free(B):
        raise CokernelNotFree("Z^n / Im B has torsion")
    if k and not el.is_unimodular(B.T):
        raise NotUnimodular("B has a maximal minor outside {-1, 0, 1}")
    return _build(_cokernel_matrix(B), B)


def from_graph(G: Graph, allow_disconnected: bool = False) -> HypertoricDatum:
    """Toric quiver datum of a loopless multigraph.

    Disconnected graphs raise unless ``allow_disconnected``, in which case
    the components are combined as a product.
    """
    G = G if isinstance(G, Graph) else Graph(G)
    if len(G.vertices) < 2:
        raise InvalidInput("a graph needs at least two vertices")
    return from_matrix_a(reduced_incidence(G, allow_disconnected=allow_disconnected))


def lawrence_lift(A, B) -> tuple[np.ndarray, np.ndarray]:
    """``(A_hat, B_hat)`` with ``A_hat = [A | -A]`` and ``B_hat = [[B, I], [0, I]]``."""
    A, B = el.int_matrix(A), el.int_matrix(B)
    n = A.shape[1]
    I = el.identity(n)
    A_hat = np.hstack([A, -A])
    top = np.hstack([B, I])
    bottom = np.hstack([np.zeros((n, B.shape[1]), dtype=object), I])
    return A_hat, np.vstack([top, bottom])


# ---------------------------------------------------------------------------
# basic invariants


def dimension(datum: HypertoricDatum) -> int:
    return 2 * (datum.n - datum.d)


@dataclass(frozen=True)
class NamikawaWeyl:
    """The product of symmetric groups on the parallel classes."""

    multiplicities: tuple[int, ...]
    order: int

    def __str__(self) -> str:
        if not self.multiplicities or all(m == 1 for m in self.multiplicities):
            return "trivial"
        return " x ".join(f"S{m}" for m in self.multiplicities if m > 1)


def namikawa_weyl(datum: HypertoricDatum) -> NamikawaWeyl:
    ms = tuple(sorted(datum.multiplicities, reverse=True))
    return NamikawaWeyl(ms, prod(factorial(m) for m in ms))


@dataclass(frozen=True)
class Codim2Slice:
    rows: tuple[int, ...]
    multiplicity: int

    @property
    def label(self) -> str:
        return f"A_{self.multiplicity - 1}"


def codim2_slices(datum: HypertoricDatum) -> list[Codim2Slice]:
    """One entry per parallel class of size at least two; its slice is ``A_{l-1}``."""
    return [
        Codim2Slice(rows, len(rows))
        for rows in datum.classes
        if len(rows) >= 2
    ]


@dataclass(frozen=True)
class FlatStratum:
    F: tuple[int, ...]
    rank: int
    stratum_dim: int
    slice: HypertoricDatum = field(repr=False, compare=False)


def _matroid_flats(M: mt.Matroid) -> list[int]:
    def closure(mask: int) -> int:
        r = M.rank_of(mask)
        out = mask
        for e in range(M.n):
            if not out >> e & 1 and M.rank_of(mask | (1 << e)) == r:
                out |= 1 << e
        return out

    start = closure(0)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for F in frontier:
            for e in range(M.n):
                if F >> e & 1:
                    continue
                G = closure(F | (1 << e))
                if G not in seen:
                    seen.add(G)
                    nxt.append(G)
        frontier = nxt
    return sorted(seen, key=lambda m: (M.rank_of(m), mt.elements_of(m)))


def slice_datum(datum: HypertoricDatum, F: Sequence[int]) -> HypertoricDatum:
    """Datum ``(A_F, B_F)`` of the normal slice to the stratum of flat ``F``.

    ``B_F`` is a basis of the saturated lattice spanned by the columns of
    the rows ``b_i, i in F``.
    """
    F = list(F)
    if not F:
        return from_matrix_b(np.empty((0, 0), dtype=object))
    rows = datum.B[F, :]
    sat = el.saturate_columns(rows)
    r = el.rank(rows)
    if sat.shape[1] != r:
        raise VerificationFailed("saturation changed the rank of a flat")
    return from_matrix_b(sat)


def flats(datum: HypertoricDatum) -> list[FlatStratum]:
    """Flats of the multi-arrangement ``{b_i^perp}``, smallest rank first."""
    M = datum.gale_matroid
    out = []
    for mask in _matroid_flats(M):
        F = tuple(mt.elements_of(mask))
        r = M.rank_of(mask)
        out.append(FlatStratum(F, r, 2 * (datum.n - datum.d - r), slice_datum(datum, F)))
    return out


# ---------------------------------------------------------------------------
# coordinate ring


@dataclass(frozen=True)
class RingGenerator:
    """The monomial ``prod z_i^u_i w_i^v_i``."""

    z_exponents: tuple[int, ...]
    w_exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.z_exponents) + sum(self.w_exponents)

    @property
    def beta(self) -> tuple[int, ...]:
        return tuple(u - v for u, v in zip(self.z_exponents, self.w_exponents))

    @property
    def quadric_index(self) -> int | None:
        """``k`` if this is ``z_k w_k``, else None."""
        nz = [i for i, u in enumerate(self.z_exponents) if u]
        if len(nz) == 1 and self.z_exponents == self.w_exponents and self.z_exponents[nz[0]] == 1:
            return nz[0]
        return None

    @property
    def is_f_beta(self) -> bool:
        return any(self.beta) and all(u == 0 or v == 0 for u, v in zip(self.z_exponents, self.w_exponents))

    @classmethod
    def quadric(cls, k: int, n: int) -> "RingGenerator":
        e = tuple(int(i == k) for i in range(n))
        return cls(e, e)

    @classmethod
    def f(cls, beta: Sequence[int]) -> "RingGenerator":
        return cls(tuple(max(b, 0) for b in beta), tuple(max(-b, 0) for b in beta))

    @property
    def label(self) -> str:
        parts = []
        for name, exps in (("z", self.z_exponents), ("w", self.w_exponents)):
            for i, e in enumerate(exps):
                if e == 1:
                    parts.append(f"{name}{i + 1}")
                elif e > 1:
                    parts.append(f"{name}{i + 1}^{e}")
        return "".join(parts) or "1"

    def __str__(self) -> str:
        return self.label


def _l1_ball(k: int, radius: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for x in range(-radius, radius + 1):
        for rest in _l1_ball(k - 1, radius - abs(x)):
            yield (x,) + rest


def lattice_points(B, bound: int) -> list[tuple[int, ...]]:
    """Nonzero ``beta`` in the column lattice of a unimodular ``B`` with ``|beta|_1 <= bound``."""
    B = el.int_matrix(B)
    n, k = B.shape
    if k == 0:
        return []
    M = mt.from_matrix(B.T)
    J = mt.elements_of(M.bases[0])
    BJ = B[J, :]
    if abs(el.det(BJ)) != 1:
        raise NotUnimodular("B has a basis minor outside {-1, 1}")
    # y = B_J x  =>  x = B_J^{-1} y, integral since det = +-1
    inv_cols = []
    for j in range(k):
        e = [int(i == j) for i in range(k)]
        x = el.solve_rational(BJ, e)
        inv_cols.append([int(c) for c in x])
    rows = [list(r) for r in B]
    out = []
    for y in _l1_ball(k, bound):
        if not any(y):
            continue
        x = [sum(inv_cols[j][i] * y[j] for j in range(k)) for i in range(k)]
        beta = tuple(sum(r[i] * x[i] for i in range(k)) for r in rows)
        if sum(abs(b) for b in beta) <= bound:
            out.append(beta)
    return out


def _conformal_part(small: Sequence[int], big: Sequence[int]) -> bool:
    """True iff ``small`` is sign-compatible with ``big`` and bounded by it entrywise."""
    for s, b in zip(small, big):
        if s == 0:
            continue
        if s * b <= 0 or abs(s) > abs(b):
            return False
    return True


def default_degree_bound(datum: HypertoricDatum) -> int:
    return 2 * max(datum.multiplicities, default=0) + 2


def ring_generators(datum: HypertoricDatum, degree_bound: int | None = None) -> list[RingGenerator]:
    """Minimal monomial generators of ``C[X(A, 0)]`` of degree at most ``degree_bound``.

    Works in the coordinates of the matrix as given (dropped rows included),
    since those still carry a quadric ``z_i w_i``.  ``f_beta`` is kept iff
    ``beta`` is not a sum of two nonzero sign-compatible lattice vectors.
    Any bound of at least ``d + 1`` yields the complete list.
    """
    B = datum.source_b
    n = B.shape[0]
    bound = default_degree_bound(datum) if degree_bound is None else int(degree_bound)
    if bound < 1:
        raise InvalidInput("degree bound must be positive")
    betas = sorted(lattice_points(B, bound), key=lambda b: (sum(abs(x) for x in b), b))
    irreducible: list[tuple[int, ...]] = []
    for beta in betas:
        if not any(_conformal_part(g, beta) for g in irreducible):
            irreducible.append(beta)
    gens = [RingGenerator.f(b) for b in irreducible]
    units = {tuple(b) for b in irreducible if sum(abs(x) for x in b) == 1}
    for k in range(n):
        e = tuple(int(i == k) for i in range(n))
        if e not in units and bound >= 2:
            gens.append(RingGenerator.quadric(k, n))
    if B.shape[1] and not irreducible:
        warnings.warn(f"no generator f_beta has degree <= {bound}", BoundTooSmall, stacklevel=2)
    elif bound <= datum.source_a.shape[0] and any(sum(abs(x) for x in b) == bound for b in irreducible):
        # for unimodular A the irreducible beta are circuit vectors, of degree <= d + 1
        warnings.warn(
            f"irreducible generators reach the degree bound {bound}; higher ones may exist",
            IncompleteGenerators,
            stacklevel=2,
        )
    gens.sort(key=lambda g: (g.degree, tuple(-x for x in g.z_exponents + g.w_exponents)))
    return gens


@dataclass(frozen=True)
class BracketTerm:
    """``coefficient * prod(numerator) / denominator``."""

    coefficient: int
    numerator: tuple[RingGenerator, ...]
    denominator: RingGenerator | None = None

    def monomial(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Exponents ``(z, w)`` of the resulting monomial."""
        n = len(self.numerator[0].z_exponents)
        z = [sum(g.z_exponents[i] for g in self.numerator) for i in range(n)]
        w = [sum(g.w_exponents[i] for g in self.numerator) for i in range(n)]
        if self.denominator is not None:
            z = [a - b for a, b in zip(z, self.denominator.z_exponents)]
            w = [a - b for a, b in zip(w, self.denominator.w_exponents)]
        return tuple(z), tuple(w)

    def __str__(self) -> str:
        num = "*".join(g.label for g in self.numerator)
        den = f"/{self.denominator.label}" if self.denominator is not None else ""
        return f"{self.coefficient}*{num}{den}"


def poisson_bracket(g1: RingGenerator, g2: RingGenerator) -> list[BracketTerm]:
    """Bracket of two generators, each ``z_k w_k`` or ``f_beta``.

    ``{z_j w_j, z_k w_k} = 0``, ``{f_b, z_k w_k} = b_k f_b`` and
    ``{f_b, f_c} = sum over j with b_j c_j < 0 of b_j |c_j| f_b f_c / (z_j w_j)``.
    """
    for g in (g1, g2):
        if g.quadric_index is None and not g.is_f_beta:
            raise UnsupportedGeneratorForm(f"{g.label} is neither z_k w_k nor f_beta")
    if g1 == g2:
        return []
    q1, q2 = g1.quadric_index, g2.quadric_index
    if q1 is not None and q2 is not None:
        return []
    if q2 is not None:
        c = g1.beta[q2]
        return [BracketTerm(c, (g1,))] if c else []
    if q1 is not None:
        c = -g2.beta[q1]
        return [BracketTerm(c, (g2,))] if c else []
    b, c = g1.beta, g2.beta
    n = len(b)
    terms = []
    for j in range(n):
        if b[j] * c[j] < 0:
            terms.append(BracketTerm(b[j] * abs(c[j]), (g1, g2), RingGenerator.quadric(j, n)))
    return terms


# ---------------------------------------------------------------------------
# nilpotent orbit test


def degree_two_vectors(B) -> list[tuple[int, ...]]:
    """``(Im B)_2``: lattice vectors of the form ``+-e_i +- e_j`` with ``i < j``."""
    B = el.int_matrix(B)
    n = B.shape[0]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * n
                    v[i], v[j] = si, sj
                    if el.lattice_contains(B, v):
                        out.append(tuple(v))
    return out


def block_ones_matrix(blocks: Sequence[int]) -> np.ndarray:
    """Block-diagonal matrix whose k-th block is the all-ones row of length ``blocks[k]``."""
    n = sum(blocks)
    A = np.zeros((len(blocks), n), dtype=object)
    col = 0
    for r, size in enumerate(blocks):
        for _ in range(size):
            A[r, col] = 1
            col += 1
    return A


def degree_two_test(datum: HypertoricDatum) -> tuple[int, ...] | None:
    """Multiset ``(l_1, ..., l_s)`` if ``Y(A, 0)`` is a product of minimal orbit closures of type A.

    Returns None when ``Im B`` is not generated by its vectors ``+-e_i +- e_j``.
    """
    B = datum.B
    n = datum.n
    if n == 0:
        return ()
    two = degree_two_vectors(B)
    gens = el.int_matrix([list(v) for v in two]).T if two else np.empty((n, 0), dtype=object)
    if not el.lattices_equal(B, gens):
        return None
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in two:
        i, j = [k for k, x in enumerate(v) if x]
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    sizes: dict[int, int] = {}
    for i in range(n):
        sizes[find(i)] = sizes.get(find(i), 0) + 1
    blocks = sorted(sizes.values(), reverse=True)
    if mt.is_isomorphic(datum.matroid, mt.from_matrix(block_ones_matrix(blocks))) is None:
        raise VerificationFailed("degree-two lattice test passed but the block matrix does not match M(A)")
    return tuple(b - 1 for b in blocks if b > 1)


# ---------------------------------------------------------------------------
# genericity and Gale duality


def is_generic(alpha, datum: HypertoricDatum) -> bool:
    """True iff ``alpha`` avoids every hyperplane of ``H_A`` (``A`` as given)."""
    from .arrangement import chamber_of, from_columns

    alpha = el.int_vector(alpha)
    d = datum.source_a.shape[0]
    if len(alpha) != d:
        raise DimensionMismatch(f"alpha has length {len(alpha)}, expected {d}")
    return chamber_of(alpha, from_columns(datum.source_a)) is not None


def gale_duality_holds(A, B, I: Sequence[int]) -> bool:
    """Check ``dim span(b_i, i in I) = |I| - r  <=>  dim span(a_j, j not in I) = d - r``.

    Tested for every admissible ``r``; returns False on the first violation.
    """
    A, B = el.int_matrix(A), el.int_matrix(B)
    d, n = A.shape
    I = sorted(set(I))
    J = [j for j in range(n) if j not in I]
    rb = el.rank(B[I, :]) if I else 0
    ra = el.rank(A[:, J]) if J else 0
    for r in range(0, d + 1):
        if not 0 <= len(I) - r <= n - d:
            continue
        if (rb == len(I) - r) != (ra == d - r):
            return False
    return True
