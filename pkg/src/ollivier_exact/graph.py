"""Immutable simple graphs over dense integer vertex ids."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    pass


class NotAnEdgeError(GraphError):
    def __init__(self, u: int, v: int):
        super().__init__(f"not an edge: ({u}, {v})")
        self.u, self.v = u, v


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    ``adjacency[i]`` is the sorted tuple of neighbours of vertex ``i`` and
    ``labels[i]`` its external name.
    """

    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    _neighbour_sets: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.adjacency) != len(self.labels):
            raise GraphError("adjacency and labels differ in length")
        sets = tuple(frozenset(nbrs) for nbrs in self.adjacency)
        for i, nbrs in enumerate(sets):
            if i in nbrs:
                raise GraphError(f"self-loop at vertex {self.labels[i]!r}")
            for j in nbrs:
                if not 0 <= j < len(sets) or i not in sets[j]:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")
        object.__setattr__(self, "_neighbour_sets", sets)
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]], labels: Sequence[str] | None = None) -> Graph:
        adj = tuple(tuple(sorted(set(nbrs))) for nbrs in adjacency)
        if labels is None:
            labels = [str(i) for i in range(len(adj))]
        return cls(adj, tuple(labels))

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(len(n) for n in self.adjacency) // 2

    def __len__(self) -> int:
        return len(self.adjacency)

    def neighbours(self, a: int) -> frozenset[int]:
        return self._neighbour_sets[a]

    def degree(self, a: int) -> int:
        return len(self.adjacency[a])

    def has_edge(self, a: int, b: int) -> bool:
        return b in self._neighbour_sets[a]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each edge once, as ``(i, j)`` with ``i < j``."""
        for i, nbrs in enumerate(self.adjacency):
            for j in nbrs:
                if i < j:
                    yield i, j

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    def label(self, a: int) -> str:
        return self.labels[a]

    def require_edge(self, u: int, v: int) -> None:
        if not (0 <= u < len(self) and 0 <= v < len(self)) or not self.has_edge(u, v):
            raise NotAnEdgeError(u, v)


def build_graph(edge_list: Iterable[tuple[str, str]], *, line_numbers: Sequence[int] | None = None) -> Graph:
    """Build a simple graph from label pairs.

    Duplicate and reversed pairs collapse to one edge. Vertex ids follow
    first-appearance order of labels.
    """
    index: dict[str, int] = {}
    adjacency: list[set[int]] = []
    for k, (a, b) in enumerate(edge_list):
        a, b = str(a), str(b)
        if a == b:
            where = f"line {line_numbers[k]}" if line_numbers is not None else f"pair {k}"
            raise GraphError(f"self-loop at {where}: {a} {b}")
        ids = []
        for lab in (a, b):
            if lab not in index:
                index[lab] = len(adjacency)
                adjacency.append(set())
            ids.append(index[lab])
        i, j = ids
        adjacency[i].add(j)
        adjacency[j].add(i)
    labels = sorted(index, key=index.__getitem__)
    return Graph(tuple(tuple(sorted(n)) for n in adjacency), tuple(labels))


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated label pairs, one per line.

    Blank lines and lines starting with ``#`` are skipped.
    """
    pairs = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphError(f"line {lineno}: expected two labels, got {len(tokens)}")
        pairs.append((tokens[0], tokens[1]))
        lines.append(lineno)
    return build_graph(pairs, line_numbers=lines)


def format_edge_list(g: Graph) -> str:
    return "".join(f"{g.labels[i]} {g.labels[j]}\n" for i, j in g.edges())


def bfs_distances(g: Graph, source: int, cap: int | None = None) -> dict[int, int]:
    """Hop distances from ``source`` to every vertex within ``cap`` hops."""
    dist = {source: 0}
    frontier = deque([source])
    while frontier:
        a = frontier.popleft()
        d = dist[a]
        if cap is not None and d >= cap:
            continue
        for b in g.adjacency[a]:
            if b not in dist:
                dist[b] = d + 1
                frontier.append(b)
    return dist


def distance_capped(g: Graph, a: int, b: int, cap: int) -> int | None:
    """BFS distance between ``a`` and ``b``, or ``None`` if it exceeds ``cap``.

    Disconnected pairs also give ``None``.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    if a == b:
        return 0
    return bfs_distances(g, a, cap).get(b)


def girth_at_least(g: Graph, threshold: int) -> bool:
    """True iff ``g`` has no cycle shorter than ``threshold``."""
    if threshold < 3:
        raise ValueError("girth threshold must be at least 3")
    for root in range(len(g)):
        dist = {root: 0}
        parent = {root: -1}
        frontier = deque([root])
        while frontier:
            a = frontier.popleft()
            # any cycle found from here has length >= 2*dist[a] + 1
            if 2 * dist[a] + 1 >= threshold:
                break
            for b in g.adjacency[a]:
                if b not in dist:
                    dist[b] = dist[a] + 1
                    parent[b] = a
                    frontier.append(b)
                elif b != parent[a] and dist[a] + dist[b] + 1 < threshold:
                    return False
    return True


def is_bipartite(g: Graph) -> bool:
    colour: dict[int, int] = {}
    for root in range(len(g)):
        if root in colour:
            continue
        colour[root] = 0
        frontier = deque([root])
        while frontier:
            a = frontier.popleft()
            for b in g.adjacency[a]:
                if b not in colour:
                    colour[b] = 1 - colour[a]
                    frontier.append(b)
                elif colour[b] == colour[a]:
                    return False
    return True


def components_within(g: Graph, vertices: Iterable[int]) -> list[list[int]]:
    """Connected components of the subgraph induced on ``vertices``.

    Each block is sorted; blocks are ordered by their smallest vertex.
    """
    members = set(vertices)
    seen: set[int] = set()
    blocks = []
    for root in sorted(members):
        if root in seen:
            continue
        seen.add(root)
        block = [root]
        frontier = [root]
        while frontier:
            a = frontier.pop()
            for b in g.adjacency[a]:
                if b in members and b not in seen:
                    seen.add(b)
                    block.append(b)
                    frontier.append(b)
        blocks.append(sorted(block))
    return blocks


def connected_components(g: Graph) -> list[list[int]]:
    return components_within(g, range(len(g)))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int], dict[int, int]]:
    """Subgraph induced on ``vertices``.

    Returns the subgraph, the list mapping new ids to old ids, and the
    inverse dictionary.
    """
    old = sorted(set(vertices))
    for a in old:
        if not 0 <= a < len(g):
            raise GraphError(f"vertex {a} not in graph")
    new_of = {a: i for i, a in enumerate(old)}
    adjacency = [tuple(sorted(new_of[b] for b in g.adjacency[a] if b in new_of)) for a in old]
    sub = Graph(tuple(adjacency), tuple(g.labels[a] for a in old))
    return sub, old, new_of
