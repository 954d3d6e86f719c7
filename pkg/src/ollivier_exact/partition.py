"""Classification of the core neighbourhood of an edge.

For an edge ``uv`` the neighbours of ``u`` and ``v`` split into triangle,
square, pentagon and free classes according to the shortest cycle through
``uv`` they lie on; ``pentagon_uv`` holds the vertices at distance exactly
two from both endpoints. The union of the cycle classes and ``pentagon_uv``
is the set ``R`` whose connected components drive the reduced programmes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .graph import Graph, bfs_distances, components_within

CLASS_NAMES = (
    "triangle",
    "square_u",
    "square_v",
    "pentagon_u",
    "pentagon_v",
    "pentagon_uv",
    "fr_u",
    "fr_v",
)
R_CLASSES = CLASS_NAMES[:6]


@dataclass(frozen=True)
class CorePartition:
    u: int
    v: int
    d_u: int
    d_v: int
    triangle: frozenset[int]
    square_u: frozenset[int]
    square_v: frozenset[int]
    pentagon_u: frozenset[int]
    pentagon_v: frozenset[int]
    pentagon_uv: frozenset[int]
    fr_u: frozenset[int]
    fr_v: frozenset[int]

    @property
    def m_u(self) -> Fraction:
        return Fraction(1, self.d_u)

    @property
    def m_v(self) -> Fraction:
        return Fraction(1, self.d_v)

    @property
    def n_u(self) -> int:
        return len(self.fr_u)

    @property
    def n_v(self) -> int:
        return len(self.fr_v)

    def counts(self) -> dict[str, int]:
        return {name: len(getattr(self, name)) for name in CLASS_NAMES}

    @property
    def R(self) -> frozenset[int]:
        return frozenset().union(*(getattr(self, name) for name in R_CLASSES))

    @property
    def core(self) -> frozenset[int]:
        """C(u, v): both closed neighbourhoods plus ``pentagon_uv``."""
        return self.R | self.fr_u | self.fr_v | {self.u, self.v}

    def class_of(self, a: int) -> str:
        if a == self.u:
            return "u"
        if a == self.v:
            return "v"
        for name in CLASS_NAMES:
            if a in getattr(self, name):
                return name
        raise KeyError(a)

    def swapped(self) -> CorePartition:
        return CorePartition(
            u=self.v, v=self.u, d_u=self.d_v, d_v=self.d_u,
            triangle=self.triangle,
            square_u=self.square_v, square_v=self.square_u,
            pentagon_u=self.pentagon_v, pentagon_v=self.pentagon_u,
            pentagon_uv=self.pentagon_uv,
            fr_u=self.fr_v, fr_v=self.fr_u,
        )


@dataclass(frozen=True)
class RComponent:
    vertices: tuple[int, ...]
    triangle: frozenset[int]
    square_u: frozenset[int]
    square_v: frozenset[int]
    pentagon_u: frozenset[int]
    pentagon_v: frozenset[int]
    pentagon_uv: frozenset[int]

    def counts(self) -> dict[str, int]:
        return {name: len(getattr(self, name)) for name in R_CLASSES}

    @property
    def boundary(self) -> frozenset[int]:
        """Vertices of the component lying in N(u) or N(v)."""
        return self.triangle | self.square_u | self.square_v | self.pentagon_u | self.pentagon_v


@dataclass(frozen=True)
class RefinedCounts:
    sq_tri_u: int
    sq_tri_v: int
    sq_circ_u: int
    sq_circ_v: int
    pent_circ_u: int
    pent_circ_v: int

    def as_dict(self) -> dict[str, int]:
        return dict(self.__dict__)


def classify_core(g: Graph, u: int, v: int) -> CorePartition:
    g.require_edge(u, v)
    nu = g.neighbours(u) - {v}
    nv = g.neighbours(v) - {u}
    triangle = nu & nv

    def squares(side: frozenset[int], other: frozenset[int]) -> frozenset[int]:
        return frozenset(a for a in side - triangle if g.neighbours(a) & (other - {a}))

    sq_u = squares(nu, nv)
    sq_v = squares(nv, nu)

    def pentagons(side, squares_, other_side, a_end, b_end) -> frozenset[int]:
        out = set()
        for a in side - triangle - squares_:
            for w in g.neighbours(a):
                if w in (a_end, b_end):
                    continue
                if g.neighbours(w) & other_side:
                    out.add(a)
                    break
        return frozenset(out)

    pent_u = pentagons(nu, sq_u, nv, u, v)
    pent_v = pentagons(nv, sq_v, nu, v, u)

    du = bfs_distances(g, u, 2)
    dv = bfs_distances(g, v, 2)
    pent_uv = frozenset(w for w, d in du.items() if d == 2 and dv.get(w) == 2)

    return CorePartition(
        u=u, v=v, d_u=g.degree(u), d_v=g.degree(v),
        triangle=frozenset(triangle),
        square_u=sq_u, square_v=sq_v,
        pentagon_u=pent_u, pentagon_v=pent_v,
        pentagon_uv=pent_uv,
        fr_u=frozenset(nu - triangle - sq_u - pent_u),
        fr_v=frozenset(nv - triangle - sq_v - pent_v),
    )


def components_of_R(g: Graph, part: CorePartition) -> list[RComponent]:
    comps = []
    for block in components_within(g, part.R):
        members = frozenset(block)
        comps.append(RComponent(
            vertices=tuple(block),
            **{name: getattr(part, name) & members for name in R_CLASSES},
        ))
    return comps


PentagonReading = Literal["paired", "verbatim"]


def refine_counts(
    part: CorePartition,
    comps: list[RComponent],
    g: Graph,
    pentagon_reading: PentagonReading = "paired",
) -> RefinedCounts:
    """Square and pentagon subclasses used by the closed-form curvature.

    ``pentagon_reading="paired"`` counts pentagon vertices whose component
    also holds a pentagon vertex of the opposite side. ``"verbatim"`` counts
    pentagon vertices joined to a triangle vertex by a 2-path inside R.
    """
    tri = part.triangle
    sq_tri_u = sum(1 for a in part.square_u if g.neighbours(a) & tri)
    sq_tri_v = sum(1 for a in part.square_v if g.neighbours(a) & tri)

    if pentagon_reading == "paired":
        pc_u = pc_v = 0
        for comp in comps:
            if comp.pentagon_u and comp.pentagon_v:
                pc_u += len(comp.pentagon_u)
                pc_v += len(comp.pentagon_v)
    elif pentagon_reading == "verbatim":
        R = part.R

        def two_path_to_triangle(a: int) -> bool:
            return any(g.neighbours(w) & tri for w in g.neighbours(a) & R)

        pc_u = sum(1 for a in part.pentagon_u if two_path_to_triangle(a))
        pc_v = sum(1 for a in part.pentagon_v if two_path_to_triangle(a))
    else:
        raise ValueError(f"unknown pentagon reading {pentagon_reading!r}")

    return RefinedCounts(
        sq_tri_u=sq_tri_u,
        sq_tri_v=sq_tri_v,
        sq_circ_u=len(part.square_u) - sq_tri_u,
        sq_circ_v=len(part.square_v) - sq_tri_v,
        pent_circ_u=pc_u,
        pent_circ_v=pc_v,
    )


# Least possible distance between distinct members of two classes, rows on
# the v side and columns on the u side. Swapping u and v gives the mirror
# table, which is checked too.
_ROWS = ("u", "triangle", "square_v", "pentagon_v", "fr_v", "pentagon_uv")
_COLS = ("v", "triangle", "square_u", "pentagon_u", "fr_u", "pentagon_uv")
_MIN_DISTANCE = (
    (1, 1, 1, 1, 1, 2),
    (1, 1, 1, 2, 2, 1),
    (1, 1, 1, 2, 3, 1),
    (1, 2, 2, 2, 3, 1),
    (1, 2, 3, 3, 3, 2),
    (2, 1, 1, 1, 2, 1),
)

# pairs of classes that may not share an edge
_SEPARATED = (
    ("fr_u", ("triangle", "square_u", "square_v", "pentagon_v", "pentagon_uv", "fr_v")),
    ("fr_v", ("triangle", "square_v", "square_u", "pentagon_u", "pentagon_uv", "fr_u")),
    ("pentagon_u", ("triangle", "square_v")),
    ("pentagon_v", ("triangle", "square_u")),
)


@dataclass
class SeparationReport:
    ok: bool
    edge_violations: list[tuple[int, int, str, str]]
    distance_violations: list[tuple[int, int, int, int]]


def _members(part: CorePartition, name: str) -> frozenset[int]:
    if name == "u":
        return frozenset({part.u})
    if name == "v":
        return frozenset({part.v})
    return getattr(part, name)


def verify_class_separations(g: Graph, part: CorePartition) -> SeparationReport:
    """Check a partition against the adjacency and distance facts it implies.

    Edge violations are ``(a, b, class_a, class_b)``; distance violations are
    ``(a, b, observed, required)``.
    """
    edge_bad = []
    for name, others in _SEPARATED:
        for a in _members(part, name):
            for other in others:
                for b in g.neighbours(a) & _members(part, other):
                    edge_bad.append((a, b, name, other))

    dist_bad = []
    core = part.core
    dist = {a: bfs_distances(g, a, 3) for a in core}
    for p in (part, part.swapped()):
        for i, row in enumerate(_ROWS):
            for j, col in enumerate(_COLS):
                need = _MIN_DISTANCE[i][j]
                for a in _members(p, row):
                    for b in _members(p, col):
                        if a == b:
                            continue
                        d = dist[a].get(b, 4)
                        if d < need:
                            dist_bad.append((a, b, d, need))
    return SeparationReport(not edge_bad and not dist_bad, edge_bad, sorted(set(dist_bad)))
