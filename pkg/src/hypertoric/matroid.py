"""Represented matroids on the ground set ``{0, ..., n-1}``.

Subsets of the ground set are bitmasks (bit ``i`` set means element ``i``
is present).  A matroid is stored by its sorted tuple of basis masks.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import GroundSizeMismatch
from .exact_linalg import _bareiss_det, _clear_denominators, _rref_inplace, int_matrix
from .graphs import Graph, signed_incidence


def mask_of(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class Matroid:
    """A matroid given by its bases.

    ``representation`` keeps the integer matrix the matroid came from, when
    there is one; nothing in this class depends on it.
    """

    def __init__(self, n: int, bases, representation: np.ndarray | None = None):
        self.n = int(n)
        self.bases = tuple(sorted(set(int(b) for b in bases)))
        if not self.bases:
            raise ValueError("a matroid needs at least one basis")
        self.rank = _popcount(self.bases[0])
        if any(_popcount(b) != self.rank for b in self.bases):
            raise ValueError("bases of different cardinalities")
        if any(b >> self.n for b in self.bases):
            raise ValueError("basis outside the ground set")
        self.representation = representation
        self._basis_set = frozenset(self.bases)

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank}, bases={len(self.bases)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Matroid) and self.n == other.n and self.bases == other.bases

    def __hash__(self) -> int:
        return hash((self.n, self.bases))

    @property
    def ground_mask(self) -> int:
        return (1 << self.n) - 1

    def is_basis(self, mask: int) -> bool:
        return mask in self._basis_set

    def rank_of(self, mask: int) -> int:
        return max(_popcount(b & mask) for b in self.bases)

    def is_independent(self, mask: int) -> bool:
        return mask in self.independent_sets

    @cached_property
    def independent_sets(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.bases:
            if b in out:
                continue
            out.update(_submasks(b))
        return frozenset(out)

    @cached_property
    def circuits(self) -> tuple[int, ...]:
        indep = self.independent_sets
        found = set()
        for I in indep:
            for e in range(self.n):
                bit = 1 << e
                if I & bit:
                    continue
                C = I | bit
                if C in indep or C in found:
                    continue
                if all((C & ~(1 << x)) in indep for x in elements_of(I)):
                    found.add(C)
        return tuple(sorted(found))

    @cached_property
    def loops(self) -> tuple[int, ...]:
        covered = 0
        for b in self.bases:
            covered |= b
        return tuple(e for e in range(self.n) if not covered >> e & 1)

    @cached_property
    def coloops(self) -> tuple[int, ...]:
        common = self.ground_mask
        for b in self.bases:
            common &= b
        return tuple(elements_of(common))

    def basis_exchange_holds(self) -> bool:
        for b1 in self.bases:
            for b2 in self.bases:
                for x in elements_of(b1 & ~b2):
                    rest = b1 & ~(1 << x)
                    if not any((rest | (1 << y)) in self._basis_set for y in elements_of(b2 & ~b1)):
                        return False
        return True

    @cached_property
    def signatures(self) -> tuple[tuple, ...]:
        """Per-element isomorphism invariants used to prune the search."""
        classes, loops = parallel_classes(self)
        class_size = {e: len(c) for c in classes for e in c}
        for e in loops:
            class_size[e] = 0
        circ = self.circuits
        out = []
        for e in range(self.n):
            bit = 1 << e
            nb = sum(1 for b in self.bases if b & bit)
            sizes = Counter(_popcount(c) for c in circ if c & bit)
            out.append((nb, class_size[e], tuple(sorted(sizes.items()))))
        return tuple(out)

    def invariants(self) -> tuple:
        classes, loops = parallel_classes(self)
        return (
            self.n,
            self.rank,
            len(self.bases),
            len(loops),
            tuple(sorted(len(c) for c in classes)),
            tuple(sorted(Counter(_popcount(c) for c in self.circuits).items())),
            tuple(sorted(self.signatures)),
        )


# ---------------------------------------------------------------------------
# constructors


def from_matrix(A) -> Matroid:
    """Vector matroid of the columns of ``A`` over Q."""
    A = int_matrix(A)
    m, n = A.shape
    rows = [[Fraction(int(x)) for x in r] for r in A]
    pivots = _rref_inplace(rows, n)
    r = len(pivots)
    R = [list(_clear_denominators(rows[i])) for i in range(r)]
    if r == 0:
        return Matroid(n, [0], representation=A)
    bases = []
    for J in itertools.combinations(range(n), r):
        if _bareiss_det([[row[j] for j in J] for row in R]) != 0:
            bases.append(mask_of(J))
    return Matroid(n, bases, representation=A)


def graph_matroid(G: Graph) -> Matroid:
    """Cycle matroid of a loopless multigraph (columns are edges in input order)."""
    return from_matrix(signed_incidence(G))


def dual(M: Matroid) -> Matroid:
    full = M.ground_mask
    return Matroid(M.n, [full & ~b for b in M.bases])


def permuted(M: Matroid, perm: Sequence[int]) -> Matroid:
    """Relabel element ``i`` as ``perm[i]``."""
    return Matroid(M.n, [_apply(b, perm) for b in M.bases])


def _apply(mask: int, perm: Sequence[int]) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << perm[i]
        mask >>= 1
        i += 1
    return out


# ---------------------------------------------------------------------------
# structure


def parallel_classes(M: Matroid) -> tuple[list[list[int]], list[int]]:
    """``(classes, loops)``: non-loop elements grouped by ``rank{i, j} <= 1``."""
    loops = list(M.loops)
    loopset = set(loops)
    classes: list[list[int]] = []
    for e in range(M.n):
        if e in loopset:
            continue
        for c in classes:
            if M.rank_of((1 << e) | (1 << c[0])) <= 1:
                c.append(e)
                break
        else:
            classes.append([e])
    return classes, loops


def simplification(M: Matroid) -> tuple[Matroid, list[list[int]]]:
    """Simple matroid on one representative per parallel class, plus the classes."""
    classes, _ = parallel_classes(M)
    reps = [c[0] for c in classes]
    pos = {e: i for i, e in enumerate(reps)}
    repmask = mask_of(reps)
    r = M.rank_of(repmask)
    bases = set()
    for b in M.bases:
        if b & ~repmask == 0 and _popcount(b) == r:
            bases.add(_apply_sub(b, pos))
    if r == 0:
        bases = {0}
    return Matroid(len(reps), bases), classes


def _apply_sub(mask: int, pos: dict[int, int]) -> int:
    return mask_of(pos[e] for e in elements_of(mask))


def connected_components(M: Matroid) -> list[list[int]]:
    """Finest partition of the ground set such that every circuit lies in one block.

    Uses fundamental circuits with respect to the first basis: ``e`` outside
    the basis is joined to every ``b`` with ``B - b + e`` again a basis.
    """
    parent = list(range(M.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    B0 = M.bases[0]
    for e in range(M.n):
        if B0 >> e & 1:
            continue
        for b in elements_of(B0):
            if M.is_basis((B0 & ~(1 << b)) | (1 << e)):
                ra, rb = find(e), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for e in range(M.n):
        groups.setdefault(find(e), []).append(e)
    return sorted(groups.values())


# ---------------------------------------------------------------------------
# isomorphism


def _restriction_bases(bases: Sequence[int], mask: int) -> frozenset[int]:
    best = 0
    found: set[int] = set()
    for b in bases:
        x = b & mask
        k = _popcount(x)
        if k > best:
            best = k
            found = {x}
        elif k == best:
            found.add(x)
    return frozenset(found)


def isomorphisms(M1: Matroid, M2: Matroid) -> Iterator[tuple[int, ...]]:
    """Yield every isomorphism ``M1 -> M2`` as a tuple ``phi`` with ``phi[i]`` the image of ``i``.

    Elements of ``M1`` are assigned in ground order and candidate images are
    tried in increasing order, so the first yielded map is the
    lexicographically least one.
    """
    if M1.n != M2.n:
        raise GroundSizeMismatch(f"ground sets of size {M1.n} and {M2.n}")
    if (M1.rank, len(M1.bases)) != (M2.rank, len(M2.bases)):
        return
    if M1.invariants() != M2.invariants():
        return
    n = M1.n
    sig1, sig2 = M1.signatures, M2.signatures
    candidates = [[f for f in range(n) if sig2[f] == sig1[e]] for e in range(n)]
    prefix_bases = [_restriction_bases(M1.bases, (1 << (k + 1)) - 1) for k in range(n)]
    phi: list[int] = []
    used = 0

    def consistent(k: int) -> bool:
        image = mask_of(phi)
        target = _restriction_bases(M2.bases, image)
        if len(target) != len(prefix_bases[k]):
            return False
        return all(_apply(b, phi) in target for b in prefix_bases[k])

    def search(k: int) -> Iterator[tuple[int, ...]]:
        nonlocal used
        if k == n:
            yield tuple(phi)
            return
        for f in candidates[k]:
            if used >> f & 1:
                continue
            phi.append(f)
            used |= 1 << f
            if consistent(k):
                yield from search(k + 1)
            phi.pop()
            used &= ~(1 << f)

    if n == 0:
        yield ()
        return
    yield from search(0)


def is_isomorphic(M1: Matroid, M2: Matroid) -> tuple[int, ...] | None:
    """The lexicographically least isomorphism, or None."""
    return next(isomorphisms(M1, M2), None)


def is_isomorphism(M1: Matroid, M2: Matroid, phi: Sequence[int]) -> bool:
    return sorted(phi) == list(range(M1.n)) and permuted(M1, phi) == M2


def brute_force_isomorphism(M1: Matroid, M2: Matroid) -> tuple[int, ...] | None:
    """Exhaustive search over all n! bijections; reference oracle for small n."""
    if M1.n != M2.n:
        raise GroundSizeMismatch(f"ground sets of size {M1.n} and {M2.n}")
    if len(M1.bases) != len(M2.bases):
        return None
    target = M2._basis_set
    for perm in itertools.permutations(range(M1.n)):
        if all(_apply(b, perm) in target for b in M1.bases):
            return perm
    return None
