"""Random generators and brute-force oracles shared by the tests."""
import itertools
import random
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from hypertoric import exact_linalg as el
from hypertoric.graphs import Graph, reduced_incidence


def random_connected_graph(rng: random.Random, max_vertices=5, max_edges=8) -> Graph:
    v = rng.randint(2, max_vertices)
    order = list(range(v))
    rng.shuffle(order)
    edges = [(order[i], order[rng.randrange(i)]) for i in range(1, v)]
    for _ in range(rng.randint(0, max(0, max_edges - len(edges)))):
        a, b = rng.sample(range(v), 2)
        edges.append((a, b))
    rng.shuffle(edges)
    return Graph(edges)


def random_gl(rng: random.Random, d: int, steps: int = 6) -> np.ndarray:
    """A random matrix in GL_d(Z) built from elementary operations."""
    P = el.identity(d)
    for _ in range(steps if d > 1 else 0):
        i, j = rng.sample(range(d), 2)
        P[i, :] = P[i, :] + rng.choice((-1, 1)) * P[j, :]
    for i in range(d):
        if rng.random() < 0.3:
            P[i, :] = -P[i, :]
    if d > 1:
        perm = list(range(d))
        rng.shuffle(perm)
        P = P[perm, :]
    return P


def random_signed_permutation(rng: random.Random, n: int) -> np.ndarray:
    perm = list(range(n))
    rng.shuffle(perm)
    D = np.zeros((n, n), dtype=object)
    for i, j in enumerate(perm):
        D[i, j] = rng.choice((-1, 1))
    return D


def random_unimodular(rng: random.Random, max_vertices=5, max_edges=8) -> np.ndarray:
    """Surjective unimodular matrix: graphic or cographic, then scrambled by P and D."""
    G = random_connected_graph(rng, max_vertices, max_edges)
    A = reduced_incidence(G)
    if rng.random() < 0.4:
        B = el.integer_kernel(A)
        if B.shape[1] > 0:
            A = B.T.copy()
    d, n = A.shape
    return el.matmul(el.matmul(random_gl(rng, d), A), random_signed_permutation(rng, n))


def brute_chambers(normals, d: int) -> int:
    """Chambers of a central arrangement: sign vectors ``s`` with ``s_i <n_i, x> >= 1`` feasible.

    Sign vectors are grown one hyperplane at a time and infeasible prefixes pruned.
    """
    normals = [list(map(int, v)) for v in normals]
    if not normals:
        return 1
    prefixes = [()]
    for k in range(len(normals)):
        nxt = []
        for pre in prefixes:
            for s in (1, -1):
                signs = pre + (s,)
                A_ub = [[-sg * x for x in normals[i]] for i, sg in enumerate(signs)]
                res = linprog(
                    np.zeros(d), A_ub=A_ub, b_ub=[-1.0] * len(signs), bounds=[(None, None)] * d, method="highs"
                )
                if res.status == 0:
                    nxt.append(signs)
        prefixes = nxt
    return len(prefixes)


def brute_point_count(normals, d: int, p: int) -> int:
    total = 0
    for x in itertools.product(range(p), repeat=d):
        if all(sum(a * b for a, b in zip(v, x)) % p for v in normals):
            total += 1
    return total


def interpolate(points):
    """Integer coefficients (ascending) of the polynomial through ``points``."""
    import sympy

    t = sympy.symbols("t")
    poly = sympy.interpolate([(x, y) for x, y in points], t)
    coeffs = sympy.Poly(sympy.expand(poly), t).all_coeffs()[::-1]
    assert all(Fraction(str(c)).denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


def all_minors_brute(A):
    """Every maximal minor via sympy, used as an oracle for unimodularity."""
    import sympy

    M = sympy.Matrix(A.tolist() if hasattr(A, "tolist") else A)
    d, n = M.shape
    return [M.extract(list(range(d)), list(J)).det() for J in itertools.combinations(range(n), d)]
