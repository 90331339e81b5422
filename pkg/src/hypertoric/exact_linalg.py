"""Exact integer linear algebra.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so no
entry ever overflows.  The heavy lifting is done on plain lists of lists;
numpy is only the exchange format.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidInput, NotSurjective, RankDeficient

#: minor enumeration refuses matrices with more columns than this by default
MAX_MINOR_COLUMNS = 24


def int_matrix(data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce ``data`` into a 2-d object array of Python ints.

    Floats are accepted only when they are integral.  ``rows``/``cols``
    give the shape of an empty input (``int_matrix([], 3, 0)``).
    """
    if isinstance(data, np.ndarray) and data.ndim == 2 and data.size == 0:
        return np.empty(data.shape, dtype=object)
    raw = [list(r) for r in data]
    if not raw:
        return np.empty((rows or 0, cols or 0), dtype=object)
    width = len(raw[0])
    out = np.empty((len(raw), width), dtype=object)
    for i, r in enumerate(raw):
        if len(r) != width:
            raise InvalidInput(f"row {i} has length {len(r)}, expected {width}")
        for j, x in enumerate(r):
            out[i, j] = _as_int(x)
    if rows is not None and out.shape[0] != rows:
        raise DimensionMismatch(f"expected {rows} rows, got {out.shape[0]}")
    return out


def _as_int(x) -> int:
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    if isinstance(x, (float, np.floating)) and float(x).is_integer():
        return int(x)
    raise InvalidInput(f"non-integer entry {x!r}")


def int_vector(v) -> list[int]:
    return [_as_int(x) for x in v]


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product, well defined for empty operands too."""
    a, b = int_matrix(a), int_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=object)
    if a.shape[1] == 0:
        return out
    return out + a.dot(b)


def _rows(M) -> list[list[int]]:
    return [[int(x) for x in r] for r in int_matrix(M)]


def _shape(M) -> tuple[int, int]:
    return int_matrix(M).shape


def _to_array(rows: list[list[int]], ncols: int) -> np.ndarray:
    if not rows:
        return np.empty((0, ncols), dtype=object)
    return int_matrix(rows)


# ---------------------------------------------------------------------------
# determinants and ranks


def det(M) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    A = _rows(M)
    n = len(A)
    if n == 0:
        return 1
    if any(len(r) != n for r in A):
        raise DimensionMismatch("determinant of a non-square matrix")
    return _bareiss_det(A)


def _bareiss_det(A: list[list[int]]) -> int:
    A = [r[:] for r in A]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rk = A[k]
        for i in range(k + 1, n):
            ri = A[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def rank(M) -> int:
    A = _rows(M)
    if not A:
        return 0
    return _rank_rows(A, len(A[0]))


def _rank_rows(A: list[list[int]], ncols: int) -> int:
    A = [r[:] for r in A]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r]
        for i in range(r + 1, len(A)):
            f = A[i][c]
            if f:
                A[i] = [x * p[c] - f * y for x, y in zip(A[i], p)]
        r += 1
        if r == len(A):
            break
    return r


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


class SmithDecomposition(NamedTuple):
    """``U @ M @ V == S`` with ``S`` diagonal and ``U``, ``V`` unimodular."""

    S: np.ndarray
    U: np.ndarray
    V: np.ndarray

    @property
    def invariant_factors(self) -> list[int]:
        k = min(self.S.shape)
        return [int(self.S[i, i]) for i in range(k) if self.S[i, i] != 0]


def smith_form(M) -> SmithDecomposition:
    M = int_matrix(M)
    m, n = M.shape
    A = [list(r) for r in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _smith_result(A, U, V, m, n)
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return _smith_result(A, U, V, m, n)


def _smith_result(A, U, V, m, n) -> SmithDecomposition:
    return SmithDecomposition(
        _to_array(A, n) if m else np.empty((0, n), dtype=object),
        _to_array(U, m) if m else np.empty((0, 0), dtype=object),
        _to_array(V, n) if n else np.empty((0, 0), dtype=object),
    )


def hermite_rows(M) -> np.ndarray:
    """Row-style Hermite normal form of the lattice spanned by the rows of ``M``.

    Zero rows are dropped, pivots are positive and entries above a pivot
    lie in ``[0, pivot)``; the result depends only on the row lattice.
    """
    M = int_matrix(M)
    ncols = M.shape[1]
    A = [list(r) for r in M]
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[p] = A[p], A[r]
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
            if all(A[i][c] == 0 for i in range(r + 1, len(A))):
                break
        if r >= len(A) or A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return _to_array(A[:r], ncols)


def column_hermite(B) -> np.ndarray:
    """Canonical generator matrix for the column lattice of ``B``."""
    B = int_matrix(B)
    return hermite_rows(B.T).T.copy()


# ---------------------------------------------------------------------------
# lattices


def integer_kernel(M) -> np.ndarray:
    """Columns form a lattice basis of ``{x in Z^n : M x = 0}``, canonically ordered."""
    M = int_matrix(M)
    n = M.shape[1]
    if M.shape[0] == 0:
        return identity(n)
    dec = smith_form(M)
    r = len(dec.invariant_factors)
    K = dec.V[:, r:]
    if K.shape[1] == 0:
        return np.empty((n, 0), dtype=object)
    return column_hermite(K)


def is_surjective_over_Z(A) -> bool:
    """True iff ``A : Z^n -> Z^d`` is onto, i.e. all d invariant factors are 1."""
    A = int_matrix(A)
    d = A.shape[0]
    if d == 0:
        return True
    factors = smith_form(A).invariant_factors
    return len(factors) == d and all(f == 1 for f in factors)


def kernel_basis(A) -> np.ndarray:
    """Gale dual ``B`` (n x (n-d)) of a surjective ``A``; ``A @ B == 0``."""
    if not is_surjective_over_Z(A):
        raise NotSurjective("A is not surjective over Z")
    return integer_kernel(A)


def cokernel_is_free(B) -> bool:
    B = int_matrix(B)
    return all(f == 1 for f in smith_form(B).invariant_factors)


def saturate_columns(B) -> np.ndarray:
    """Basis of ``(Q-span of columns) ∩ Z^n``."""
    B = int_matrix(B)
    n = B.shape[0]
    ann = integer_kernel(B.T)  # y with y^T B = 0
    if ann.shape[1] == 0:
        return identity(n)
    return integer_kernel(ann.T)


def solve_rational(M, v) -> list[Fraction] | None:
    """Some rational ``x`` with ``M x = v``, or None if inconsistent."""
    M = int_matrix(M)
    m, n = M.shape
    v = int_vector(v)
    if len(v) != m:
        raise DimensionMismatch(f"vector of length {len(v)} for {m} rows")
    aug = [[Fraction(x) for x in M[i]] + [Fraction(v[i])] for i in range(m)]
    pivots = _rref_inplace(aug, n)
    for row in aug[len(pivots):]:
        if row[n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = aug[r][n]
    return x


def lattice_contains(B, v) -> bool:
    """True iff ``v`` lies in the column lattice of ``B`` (columns independent)."""
    B = int_matrix(B)
    v = int_vector(v)
    if len(v) != B.shape[0]:
        raise DimensionMismatch(f"vector of length {len(v)} for {B.shape[0]} rows")
    if B.shape[1] == 0:
        return all(x == 0 for x in v)
    x = solve_rational(B, v)
    return x is not None and all(c.denominator == 1 for c in x)


def lattices_equal(B1, B2) -> bool:
    B1, B2 = int_matrix(B1), int_matrix(B2)
    if B1.shape[0] != B2.shape[0]:
        raise DimensionMismatch("lattices live in different ambient spaces")
    h1, h2 = hermite_rows(B1.T), hermite_rows(B2.T)
    return h1.shape == h2.shape and bool(np.all(h1 == h2))


# ---------------------------------------------------------------------------
# minors and unimodularity


def _check_minor_budget(n: int, max_cols: int | None) -> None:
    limit = MAX_MINOR_COLUMNS if max_cols is None else max_cols
    if n > limit:
        from .errors import BudgetExceeded

        raise BudgetExceeded(f"minor enumeration over {n} columns exceeds limit {limit}")


def maximal_minors(A, max_cols: int | None = None) -> Iterable[tuple[tuple[int, ...], int]]:
    """Yield ``(columns, minor)`` for every d-subset of columns, lexicographically."""
    A = int_matrix(A)
    d, n = A.shape
    _check_minor_budget(n, max_cols)
    rows = [list(r) for r in A]
    for J in itertools.combinations(range(n), d):
        yield J, _bareiss_det([[r[j] for j in J] for r in rows])


def is_unimodular(A, max_cols: int | None = None) -> bool:
    """All maximal minors in {-1, 0, 1}; ``A`` must have full row rank."""
    A = int_matrix(A)
    if rank(A) != A.shape[0]:
        raise RankDeficient(f"rank {rank(A)} < {A.shape[0]} rows")
    return all(abs(m) <= 1 for _, m in maximal_minors(A, max_cols))


def is_totally_unimodular(C, max_cols: int | None = None) -> bool:
    C = int_matrix(C)
    m, n = C.shape
    _check_minor_budget(max(m, n), max_cols)
    rows = [list(r) for r in C]
    if any(abs(x) > 1 for r in rows for x in r):
        return False
    for k in range(2, min(m, n) + 1):
        for I in itertools.combinations(range(m), k):
            sub = [rows[i] for i in I]
            for J in itertools.combinations(range(n), k):
                if abs(_bareiss_det([[r[j] for j in J] for r in sub])) > 1:
                    return False
    return True


def subdeterminant_bound(N) -> int:
    """Hadamard bound on ``|det|`` of every square submatrix of ``N`` (rows = normals)."""
    N = int_matrix(N)
    if N.size == 0:
        return 1
    norms = sorted((sum(x * x for x in r) for r in N), reverse=True)
    k = min(N.shape)
    prod = 1
    for sq in norms[:k]:
        prod *= sq
    # ceil(sqrt(prod))
    root = _isqrt_ceil(prod)
    return max(root, 1)


def _isqrt_ceil(x: int) -> int:
    from math import isqrt

    r = isqrt(x)
    return r if r * r == x else r + 1


# ---------------------------------------------------------------------------
# rational subspaces


def _rref_inplace(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce ``rows`` to RREF over Q on the first ``ncols`` columns; return pivots."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide by the gcd and make the first nonzero entry positive."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    out = [x // g for x in v]
    lead = next(x for x in out if x)
    if lead < 0:
        out = [-x for x in out]
    return tuple(out)


def _clear_denominators(row: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive([int(x * den) for x in row])


class RationalSubspace:
    """A subspace of Q^n stored by its canonical reduced-echelon basis.

    Each basis row is the RREF row scaled to a primitive integer vector with
    positive pivot, so two subspaces are equal iff their ``basis`` tuples are.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: tuple[tuple[int, ...], ...], pivots: tuple[int, ...]):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, generators, ambient_dim: int) -> "RationalSubspace":
        rows = [[Fraction(int(x)) for x in g] for g in generators]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch(f"generator of length {len(r)} in Q^{ambient_dim}")
        pivots = _rref_inplace(rows, ambient_dim)
        basis = tuple(_clear_denominators(rows[i]) for i in range(len(pivots)))
        return cls(ambient_dim, basis, tuple(pivots))

    @classmethod
    def whole(cls, ambient_dim: int) -> "RationalSubspace":
        return cls.span([[int(i == j) for j in range(ambient_dim)] for i in range(ambient_dim)], ambient_dim)

    @classmethod
    def kernel(cls, rows, ambient_dim: int) -> "RationalSubspace":
        """The subspace ``{x : r . x = 0 for every r in rows}``."""
        rows = list(rows)
        if not rows:
            return cls.whole(ambient_dim)
        K = integer_kernel(int_matrix(rows))
        return cls.span([list(K[:, j]) for j in range(K.shape[1])], ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        v = [Fraction(int(x)) for x in v]
        for row, p in zip(self.basis, self.pivots):
            if v[p]:
                f = v[p] / row[p]
                v = [x - f * y for x, y in zip(v, row)]
        return not any(v)

    def orthogonal_complement(self) -> "RationalSubspace":
        return RationalSubspace.kernel(self.basis, self.ambient_dim)

    def __add__(self, other: "RationalSubspace") -> "RationalSubspace":
        return RationalSubspace.span(self.basis + other.basis, self.ambient_dim)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalSubspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"RationalSubspace(dim={self.dim}, ambient={self.ambient_dim}, basis={list(self.basis)})"
