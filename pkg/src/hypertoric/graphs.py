"""Finite multigraphs and their signed incidence matrices."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import Disconnected, InvalidInput, SelfLoopPresent
from .exact_linalg import int_matrix


@dataclass(frozen=True)
class Graph:
    """An undirected multigraph given by its edge list; repeated edges are parallel edges."""

    edges: tuple[tuple[int, int], ...]

    def __init__(self, edges: Iterable[tuple[int, int]]):
        es = tuple((int(u), int(v)) for u, v in edges)
        for u, v in es:
            if u < 0 or v < 0:
                raise InvalidInput(f"negative vertex label in edge ({u}, {v})")
        object.__setattr__(self, "edges", es)

    @property
    def vertices(self) -> list[int]:
        return sorted({x for e in self.edges for x in e})

    def __len__(self) -> int:
        return len(self.edges)

    def check_loopless(self) -> None:
        for k, (u, v) in enumerate(self.edges):
            if u == v:
                raise SelfLoopPresent(f"edge {k} is a self-loop at vertex {u}")

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components, each sorted, ordered by least vertex."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups: dict[int, list[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabeled(self, mapping: dict[int, int]) -> "Graph":
        return Graph((mapping[u], mapping[v]) for u, v in self.edges)

    def reoriented(self, flips: Iterable[bool]) -> "Graph":
        return Graph((v, u) if f else (u, v) for (u, v), f in zip(self.edges, flips))


def signed_incidence(G: Graph) -> np.ndarray:
    """Full vertex-by-edge incidence matrix; edge ``(u, v)`` is oriented ``u -> v``.

    The column of ``u -> v`` is ``v_v - v_u``.
    """
    G.check_loopless()
    verts = G.vertices
    index = {v: i for i, v in enumerate(verts)}
    M = np.zeros((len(verts), len(G.edges)), dtype=object)
    for k, (u, v) in enumerate(G.edges):
        M[index[u], k] -= 1
        M[index[v], k] += 1
    return M


def reduced_incidence(G: Graph, allow_disconnected: bool = False) -> np.ndarray:
    """The surjective matrix ``A_G`` of a toric quiver variety.

    For each component with root ``v0`` (its least vertex) the lattice
    ``{sum c_k v_k : sum c_k = 0}`` is written in the basis ``v0 - v1, ...``;
    components stack block-diagonally.  Edge ``(u, v)`` maps to ``v_v - v_u``.
    """
    G.check_loopless()
    comps = G.components()
    if len(comps) > 1 and not allow_disconnected:
        raise Disconnected(f"graph has {len(comps)} connected components")
    coord: dict[int, int | None] = {}
    d = 0
    for comp in comps:
        coord[comp[0]] = None
        for v in comp[1:]:
            coord[v] = d
            d += 1
    A = np.zeros((d, len(G.edges)), dtype=object)
    for k, (u, v) in enumerate(G.edges):
        # v_v - v_u = (v0 - v_u) - (v0 - v_v)
        if coord[u] is not None:
            A[coord[u], k] += 1
        if coord[v] is not None:
            A[coord[v], k] -= 1
    return int_matrix(A) if d else np.empty((0, len(G.edges)), dtype=object)
