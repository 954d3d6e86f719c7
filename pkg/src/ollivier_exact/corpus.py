"""Test corpora: every connected graph up to a vertex count, and seeded
random graphs whose core neighbourhoods are small enough to enumerate."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np
import pynauty

from .graph import Graph, connected_components
from .partition import classify_core

# OEIS A001349
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080}


def _certificate(n: int, adjacency: list[list[int]]) -> bytes:
    return pynauty.certificate(pynauty.Graph(n, adjacency_dict={i: adjacency[i] for i in range(n)}))


@lru_cache(maxsize=None)
def _connected_level(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Adjacency tuples of the connected graphs on ``n`` vertices, one per
    isomorphism class.

    Every connected graph has a vertex whose removal keeps it connected, so
    level ``n`` is reached by attaching a new vertex to a non-empty subset
    of each graph on level ``n - 1``.
    """
    if n < 1:
        return ()
    if n == 1:
        return (((),),)
    seen: set[bytes] = set()
    out = []
    for adj in _connected_level(n - 1):
        for mask in range(1, 1 << (n - 1)):
            new = [list(nbrs) for nbrs in adj] + [[]]
            for i in range(n - 1):
                if mask >> i & 1:
                    new[i].append(n - 1)
                    new[n - 1].append(i)
            cert = _certificate(n, new)
            if cert not in seen:
                seen.add(cert)
                out.append(tuple(tuple(sorted(nbrs)) for nbrs in new))
    return tuple(out)


def connected_graphs(n: int) -> Iterator[Graph]:
    """Connected graphs on exactly ``n`` vertices up to isomorphism."""
    for adj in _connected_level(n):
        yield Graph.from_adjacency(adj)


def connected_graphs_upto(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from connected_graphs(n)


def edge_orbits(g: Graph) -> list[list[tuple[int, int]]]:
    """Edges grouped into orbits of the automorphism group."""
    edges = list(g.edges())
    if not edges:
        return []
    generators, *_ = pynauty.autgrp(pynauty.Graph(len(g), adjacency_dict={i: list(g.adjacency[i]) for i in range(len(g))}))
    parent = {e: e for e in edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for perm in generators:
        for i, j in edges:
            a, b = perm[i], perm[j]
            img = (min(a, b), max(a, b))
            ra, rb = find((i, j)), find(img)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for e in edges:
        groups.setdefault(find(e), []).append(e)
    return list(groups.values())


def core_size(g: Graph, u: int, v: int) -> int:
    return len(classify_core(g, u, v).core) - 2


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adjacency[i].append(j)
                adjacency[j].append(i)
    return Graph.from_adjacency(adjacency)


def random_corpus(
    count: int,
    seed: int = 0,
    min_n: int = 6,
    max_n: int = 14,
    core_budget: int = 12,
    connected: bool = True,
) -> list[Graph]:
    """Seeded random graphs whose every edge has a core neighbourhood of at
    most ``core_budget`` vertices besides the edge itself."""
    rng = np.random.default_rng(seed)
    out: list[Graph] = []
    while len(out) < count:
        n = int(rng.integers(min_n, max_n + 1))
        mean_degree = float(rng.uniform(2.0, 4.5))
        g = random_graph(rng, n, min(1.0, mean_degree / (n - 1)))
        if g.edge_count == 0:
            continue
        if connected and len(connected_components(g)) != 1:
            continue
        if all(core_size(g, u, v) <= core_budget for u, v in g.edges()):
            out.append(g)
    return out
