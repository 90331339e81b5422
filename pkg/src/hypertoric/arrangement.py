"""Central rational hyperplane arrangements and their characteristic polynomials.

A hyperplane is stored by a primitive integer normal whose first nonzero
entry is positive.  ``char_poly`` offers three independent methods: the
intersection poset with its Möbius function, deletion-restriction, and
point counting over a prime field (a cross-check, valid for primes above
the subdeterminant bound).
"""
from __future__ import annotations

import itertools
import logging
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from math import comb, factorial
from typing import Iterable, Sequence

import numpy as np

from . import exact_linalg as el
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InvalidInput,
    NotDivisible,
    RankDeficient,
    SmallPrimeWarning,
    UnsupportedL3,
)

log = logging.getLogger(__name__)

DEFAULT_FLAT_CAP = 2_000_000
DEFAULT_POINT_BUDGET = 10**8
_INT64_SAFE = 2**40


class Arrangement:
    """A central arrangement in ``Q^d`` given by distinct primitive normals."""

    __slots__ = ("ambient_dim", "normals")

    def __init__(self, ambient_dim: int, normals: Iterable[Sequence[int]] = ()):
        self.ambient_dim = int(ambient_dim)
        seen: dict[tuple[int, ...], None] = {}
        for v in normals:
            v = tuple(int(x) for x in v)
            if len(v) != self.ambient_dim:
                raise DimensionMismatch(f"normal {v} does not live in dimension {self.ambient_dim}")
            if not any(v):
                raise InvalidInput("zero normal vector")
            seen.setdefault(el.primitive(v), None)
        self.normals: tuple[tuple[int, ...], ...] = tuple(seen)

    def __len__(self) -> int:
        return len(self.normals)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Arrangement)
            and self.ambient_dim == other.ambient_dim
            and set(self.normals) == set(other.normals)
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, frozenset(self.normals)))

    def __repr__(self) -> str:
        return f"Arrangement(d={self.ambient_dim}, hyperplanes={len(self.normals)})"

    def normal_matrix(self) -> np.ndarray:
        if not self.normals:
            return np.zeros((0, self.ambient_dim), dtype=np.int64)
        return np.array(self.normals, dtype=np.int64)

    def rank(self) -> int:
        return el.rank(self.normal_matrix()) if self.normals else 0

    def deletion(self, index: int) -> "Arrangement":
        return Arrangement(self.ambient_dim, self.normals[:index] + self.normals[index + 1 :])

    def restriction(self, index: int) -> "Arrangement":
        """The arrangement induced on hyperplane ``index``, in coordinates of ``H ∩ Z^d``."""
        H = self.normals[index]
        K = el.integer_kernel([list(H)])
        out = []
        for j, v in enumerate(self.normals):
            if j == index:
                continue
            w = [sum(v[i] * K[i, c] for i in range(self.ambient_dim)) for c in range(K.shape[1])]
            if any(w):
                out.append(w)
        return Arrangement(self.ambient_dim - 1, out)


def from_columns(A) -> Arrangement:
    """``H_A``: hyperplanes of ``Q^d`` spanned by columns of the rank-``d`` matrix ``A``."""
    A = el.int_matrix(A)
    d, n = A.shape
    if el.rank(A) != d:
        raise RankDeficient(f"A has rank {el.rank(A)} < {d}")
    if d == 0:
        return Arrangement(0)
    cols: dict[tuple[int, ...], None] = {}
    for j in range(n):
        c = tuple(int(x) for x in A[:, j])
        if any(c):
            cols.setdefault(el.primitive(c), None)
    vecs = list(cols)
    normals = []
    for J in itertools.combinations(range(len(vecs)), d - 1):
        rows = [list(vecs[j]) for j in J]
        if rows and el.rank(rows) != d - 1:
            continue
        K = el.integer_kernel(rows) if rows else el.identity(d)
        if K.shape[1] == 1:
            normals.append([int(x) for x in K[:, 0]])
    return Arrangement(d, sorted({el.primitive(v) for v in normals}))


def edelman_reiner_arrangement(l1: int, l2: int, l3: int) -> Arrangement:
    """``x_i + y_j + z_k = 0`` together with all differences within each block.

    Coordinates are ordered ``x_1..x_l1, y_1..y_l2, z_1..z_l3``.
    """
    if min(l1, l2, l3) < 1:
        raise InvalidInput("block sizes must be positive")
    d = l1 + l2 + l3
    X, Y, Z = range(l1), range(l1, l1 + l2), range(l1 + l2, d)
    normals = []
    for i in X:
        for j in Y:
            for k in Z:
                v = [0] * d
                v[i] = v[j] = v[k] = 1
                normals.append(v)
    for block in (X, Y, Z):
        for a, b in itertools.combinations(block, 2):
            v = [0] * d
            v[a], v[b] = 1, -1
            normals.append(v)
    return Arrangement(d, normals)


def omin_matrix(l1: int, l2: int, l3: int) -> np.ndarray:
    """The matrix ``A_{l1,l2,l3} = [-C | I]`` whose Gale dual has multiplicities ``(l1, l2, l3)``.

    Its Gale dual ``B = [I; C]`` has rows ``(1,0), (0,1)``, then ``l1 - 1``
    copies of ``(1,0)``, ``l2 - 1`` of ``(0,1)`` and ``l3`` of ``(-1,-1)``.
    """
    if min(l1, l2, l3) < 1:
        raise InvalidInput("multiplicities must be positive")
    C = [[1, 0]] * (l1 - 1) + [[0, 1]] * (l2 - 1) + [[-1, -1]] * l3
    m = len(C)
    A = np.zeros((m, m + 2), dtype=object)
    for r, (a, b) in enumerate(C):
        A[r, 0], A[r, 1] = -a, -b
        A[r, 2 + r] = 1
    return A


# ---------------------------------------------------------------------------
# characteristic polynomials


class CharPoly:
    """Integer polynomial in ``t``; ``coefficients[k]`` is the coefficient of ``t^k``."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int]):
        c = [int(x) for x in coefficients]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coefficients: tuple[int, ...] = tuple(c) if c else (0,)

    @classmethod
    def monomial(cls, k: int, coefficient: int = 1) -> "CharPoly":
        return cls([0] * k + [coefficient])

    @classmethod
    def from_roots(cls, roots: Iterable[int], t_power: int = 0) -> "CharPoly":
        """``t^t_power * prod (t - r)``."""
        p = cls.monomial(t_power)
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def descending(self) -> list[int]:
        return list(reversed(self.coefficients))

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, CharPoly) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: "CharPoly") -> "CharPoly":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return CharPoly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> "CharPoly":
        return CharPoly(-c for c in self.coefficients)

    def __sub__(self, other: "CharPoly") -> "CharPoly":
        return self + (-other)

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return CharPoly(out)

    def __repr__(self) -> str:
        return f"CharPoly({list(self.coefficients)})"

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            body = {0: f"{mag}", 1: "t" if mag == 1 else f"{mag}*t"}.get(k, f"t^{k}" if mag == 1 else f"{mag}*t^{k}")
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


# ---------------------------------------------------------------------------
# intersection poset


@dataclass(frozen=True)
class Flat:
    """A flat of an arrangement.

    ``hyperplanes`` lists the indices of all hyperplanes containing it and
    the columns of ``basis`` span its integer points.
    """

    dim: int
    hyperplanes: tuple[int, ...]
    basis: np.ndarray

    @property
    def rank(self) -> int:
        return self.basis.shape[0] - self.dim

    @cached_property
    def subspace(self) -> el.RationalSubspace:
        d = self.basis.shape[0]
        return el.RationalSubspace.span(self.basis.T.tolist(), d)


@dataclass(frozen=True)
class IntersectionPoset:
    """Flats ordered by reverse inclusion, with Möbius values from ``Q^d``."""

    arrangement: Arrangement
    flats: tuple[Flat, ...]
    mobius: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.flats)

    def char_poly(self) -> CharPoly:
        coeffs = [0] * (self.arrangement.ambient_dim + 1)
        for f, mu in zip(self.flats, self.mobius):
            coeffs[f.dim] += mu
        return CharPoly(coeffs)

    def below(self, index: int) -> list[int]:
        """Indices of flats strictly below flat ``index`` (i.e. strictly containing it)."""
        target = set(self.flats[index].hyperplanes)
        return [
            i
            for i, f in enumerate(self.flats)
            if f.dim > self.flats[index].dim and set(f.hyperplanes) <= target
        ]

    def rank_counts(self) -> list[int]:
        d = self.arrangement.ambient_dim
        out = [0] * (d + 1)
        for f in self.flats:
            out[d - f.dim] += 1
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out


def _row_kernel(v: Sequence[int]) -> list[list[int]]:
    """Columns span ``{x in Z^k : v . x = 0}``; computed by extended-gcd column operations."""
    k = len(v)
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    v = [int(x) for x in v]
    first = next((j for j in range(k) if v[j]), None)
    if first is None:
        return U
    if first:
        for row in U:
            row[0], row[first] = row[first], row[0]
        v[0], v[first] = v[first], v[0]
    for j in range(1, k):
        a, b = v[0], v[j]
        if b == 0:
            continue
        x0, y0, x1, y1 = 1, 0, 0, 1
        aa, bb = a, b
        while bb:
            q = aa // bb
            aa, bb = bb, aa - q * bb
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        g = aa
        for row in U:
            c0, cj = row[0], row[j]
            row[0] = x0 * c0 + y0 * cj
            row[j] = (-b // g) * c0 + (a // g) * cj
        v[0], v[j] = g, 0
    return [row[1:] for row in U]


def _mask_words(indices: np.ndarray, m: int) -> np.ndarray:
    words = np.zeros(max(1, (m + 63) // 64), dtype=np.uint64)
    for i in indices:
        words[i // 64] |= np.uint64(1) << np.uint64(i % 64)
    return words


def intersection_poset(arr: Arrangement, flat_cap: int = DEFAULT_FLAT_CAP) -> IntersectionPoset:
    """All intersections of hyperplanes, built rank by rank, with their Möbius values.

    Each flat carries an integer basis ``K``; intersecting with hyperplane
    ``h`` takes the kernel of the row ``n_h K``, and the flat is identified
    by the set of hyperplanes ``h'`` with ``n_h' K = 0``.
    """
    d, m = arr.ambient_dim, len(arr)
    N = arr.normal_matrix()
    N_obj = N.astype(object)
    top = Flat(d, (), np.eye(d, dtype=np.int64))
    flats = [top]
    index = {(): 0}
    frontier = [0]
    while frontier:
        nxt = []
        for fi in frontier:
            F = flats[fi]
            covered = set(F.hyperplanes)
            for h in range(m):
                if h in covered:
                    continue
                row = (N_obj[h] @ F.basis.astype(object)).tolist() if d else []
                X = _row_kernel(row)
                K2 = _compact(F.basis.astype(object) @ np.array(X, dtype=object).reshape(F.dim, F.dim - 1), d)
                if K2.shape[1] == 0:
                    inside = np.ones(m, dtype=bool)
                elif K2.dtype == object:
                    inside = ~np.any(N_obj @ K2 != 0, axis=1)
                else:
                    inside = ~np.any(N @ K2 != 0, axis=1)
                key = tuple(int(i) for i in np.nonzero(inside)[0])
                covered.update(key)
                if key not in index:
                    if len(flats) >= flat_cap:
                        raise BudgetExceeded(f"intersection poset exceeds {flat_cap} flats")
                    index[key] = len(flats)
                    flats.append(Flat(F.dim - 1, key, K2))
                    nxt.append(index[key])
        frontier = nxt
    return IntersectionPoset(arr, tuple(flats), tuple(_mobius(flats, m)))


def _compact(K: np.ndarray, d: int) -> np.ndarray:
    """Store a flat basis as int64 when its entries are small enough, else as exact ints."""
    if K.size == 0:
        return np.zeros((d, K.shape[1] if K.ndim == 2 else 0), dtype=np.int64)
    big = max(abs(int(x)) for x in K.flat)
    if big > _INT64_SAFE:
        K = el.column_hermite(K)
        big = max(abs(int(x)) for x in K.flat)
    return K.astype(np.int64) if big <= _INT64_SAFE else K


def _mobius(flats: Sequence[Flat], m: int) -> list[int]:
    """``mu(top) = 1`` and ``mu(x) = -sum_{y < x} mu(y)``; subset tests run on packed bitmasks."""
    masks = np.stack([_mask_words(np.array(f.hyperplanes, dtype=np.int64), m) for f in flats])
    mu = np.zeros(len(flats), dtype=object)
    dims = np.array([f.dim for f in flats])
    mu_int = np.zeros(len(flats), dtype=np.int64)
    # flats are stored with non-increasing dimension
    start_of_dim: dict[int, int] = {}
    for i, dm in enumerate(dims):
        start_of_dim.setdefault(int(dm), i)
    for i, f in enumerate(flats):
        if i == 0:
            mu[0] = 1
            mu_int[0] = 1
            continue
        lo = start_of_dim[f.dim]
        cand = masks[:lo]
        sub = np.all((cand & ~masks[i]) == 0, axis=1)
        val = -int(mu_int[:lo][sub].sum())
        mu[i] = val
        mu_int[i] = val
    return [int(x) for x in mu]


def _delres(arr: Arrangement, memo: dict) -> CharPoly:
    d = arr.ambient_dim
    key = (d, frozenset(arr.normals))
    if key in memo:
        return memo[key]
    k = len(arr)
    if k == 0:
        out = CharPoly.monomial(d)
    elif arr.rank() == k:
        out = CharPoly.monomial(d - k) * CharPoly.from_roots([1] * k)
    else:
        last = k - 1
        out = _delres(arr.deletion(last), memo) - _delres(arr.restriction(last), memo)
    memo[key] = out
    return out


def char_poly_deletion_restriction(arr: Arrangement) -> CharPoly:
    """``chi(A) = chi(A \\ H) - chi(A / H)``, recursing on the last hyperplane."""
    return _delres(arr, {})


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def char_poly_finite_field(
    arr: Arrangement,
    p: int,
    budget: int = DEFAULT_POINT_BUDGET,
    threads: int = 1,
    chunk: int = 1 << 18,
) -> int:
    """Number of points of ``F_p^d`` on no hyperplane, by direct enumeration.

    Equals ``char_poly(arr)(p)`` once ``p`` exceeds every subdeterminant of
    the normals; below that bound a ``SmallPrimeWarning`` is issued and the
    count is still returned.
    """
    if not _is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    d = arr.ambient_dim
    total = p**d
    if total > budget:
        raise BudgetExceeded(f"{p}^{d} points exceed the budget {budget}")
    if p <= el.subdeterminant_bound(arr.normal_matrix()) and len(arr):
        warnings.warn(
            f"p = {p} does not exceed the subdeterminant bound; the count may differ from chi(p)",
            SmallPrimeWarning,
            stacklevel=2,
        )
    N = arr.normal_matrix() % p
    if d == 0:
        return 1 if not len(arr) else 0
    powers = np.array([p**j for j in range(d)], dtype=np.int64)

    def count(lo: int, hi: int) -> int:
        idx = np.arange(lo, hi, dtype=np.int64)
        X = (idx[None, :] // powers[:, None]) % p
        if not len(arr):
            return hi - lo
        V = (N @ X) % p
        return int(np.count_nonzero(np.all(V != 0, axis=0)))

    bounds = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(lambda b: count(*b), bounds))
    return sum(count(lo, hi) for lo, hi in bounds)


def _interpolate(points: Sequence[tuple[int, int]]) -> CharPoly:
    """Exact Lagrange interpolation through integer points, returning integer coefficients."""
    from fractions import Fraction

    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    if any(c.denominator != 1 for c in coeffs):
        raise InvalidInput("finite-field counts are not interpolated by an integer polynomial")
    return CharPoly(int(c) for c in coeffs)


def _primes_above(bound: int, count: int) -> list[int]:
    out = []
    q = bound + 1
    while len(out) < count:
        if _is_prime(q):
            out.append(q)
        q += 1
    return out


def char_poly(
    arr: Arrangement,
    method: str = "poset",
    *,
    flat_cap: int = DEFAULT_FLAT_CAP,
    budget: int = DEFAULT_POINT_BUDGET,
    threads: int = 1,
) -> CharPoly:
    """Characteristic polynomial ``sum over flats x of mu(x) t^dim(x)``.

    ``method`` is ``"poset"`` (falls back to deletion-restriction above
    ``flat_cap`` flats), ``"delres"``, or ``"ffield"`` (interpolation of
    point counts at ``d + 1`` primes above the subdeterminant bound).
    """
    if method == "poset":
        try:
            return intersection_poset(arr, flat_cap=flat_cap).char_poly()
        except BudgetExceeded:
            log.info("poset over %d flats; using deletion-restriction", flat_cap)
            return char_poly_deletion_restriction(arr)
    if method == "delres":
        return char_poly_deletion_restriction(arr)
    if method == "ffield":
        d = arr.ambient_dim
        primes = _primes_above(el.subdeterminant_bound(arr.normal_matrix()), d + 1)
        pts = [(p, char_poly_finite_field(arr, p, budget=budget, threads=threads)) for p in primes]
        return _interpolate(pts)
    raise InvalidInput(f"unknown method {method!r}")


def chamber_count(arr: Arrangement, **kwargs) -> int:
    """Number of chambers, ``(-1)^d chi(-1)``."""
    return (-1) ** arr.ambient_dim * char_poly(arr, **kwargs)(-1)


def chamber_of(alpha: Sequence[int], arr: Arrangement) -> tuple[int, ...] | None:
    """Sign of ``<n, alpha>`` for every normal ``n``; None when ``alpha`` lies on a hyperplane."""
    alpha = el.int_vector(alpha)
    if len(alpha) != arr.ambient_dim:
        raise DimensionMismatch(f"alpha has length {len(alpha)}, expected {arr.ambient_dim}")
    signs = []
    for v in arr.normals:
        s = sum(a * b for a, b in zip(v, alpha))
        if s == 0:
            return None
        signs.append(1 if s > 0 else -1)
    return tuple(signs)


def crepant_resolution_count(datum, **kwargs) -> int:
    """Projective crepant resolutions of ``Y(A, 0)``: chambers of ``H_A`` over ``|W_B|``."""
    from .datum import namikawa_weyl

    r = chamber_count(from_columns(datum.A), **kwargs)
    w = namikawa_weyl(datum).order
    if r % w:
        raise NotDivisible(f"{r} chambers are not divisible by |W| = {w}")
    return r // w


@dataclass(frozen=True)
class ERClosedForm:
    char_poly: CharPoly
    chambers: int


def er_closed_form(l1: int, l2: int, l3: int) -> ERClosedForm:
    """Closed forms for ``chi`` and chamber count of the block arrangement with ``l3`` in {1, 2}."""
    if l3 not in (1, 2):
        raise UnsupportedL3(f"closed forms exist only for l3 in {{1, 2}}, got {l3}")
    if min(l1, l2) < 1:
        raise InvalidInput("block sizes must be positive")
    if l3 == 1:
        chi = CharPoly.from_roots(range(1, l1 + l2), t_power=2)
        return ERClosedForm(chi, factorial(l1 + l2))
    roots = [1, *range(l1 + 1, l1 + l2 + 1), *range(l2 + 1, l1 + l2)]
    chi = CharPoly.from_roots(roots, t_power=2)
    s = l1 + l2 + 1
    num = 2 * comb(s, l1) * comb(s, l2) * factorial(l1) * factorial(l2)
    return ERClosedForm(chi, num // s)
