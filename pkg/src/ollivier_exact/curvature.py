"""Wasserstein distance and Ollivier curvature of graph edges.

Four independent routes compute ``W(u, v)``:

* ``full-lp``: one exact programme over the whole core neighbourhood,
  with a Lipschitz constraint for every pair of vertices.
* ``reduced-lp``: the three-branch decomposition, where the two
  non-trivial branches split into one small programme per component of R.
* ``closed-form``: the combinatorial expression, valid when every
  component of R touches at most two neighbours of ``u`` or ``v``.
* ``brute-force``: enumeration of integer Lipschitz maps on the core
  neighbourhood for ``x(v)`` in ``{-1, 0, 1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Mapping

import numpy as np

from .graph import Graph, bfs_distances, girth_at_least, is_bipartite
from .lp import (
    BudgetExceededError,
    LinearProgramme,
    LPSolution,
    best_row,
    enumerate_feasible,
    solve_lp,
)
from .partition import (
    CorePartition,
    PentagonReading,
    RComponent,
    RefinedCounts,
    classify_core,
    components_of_R,
    refine_counts,
)

Method = Literal["auto", "full-lp", "reduced-lp", "closed-form", "brute-force", "bm-bipartite", "bm-girth5", "forman"]
METHODS: tuple[str, ...] = ("auto", "full-lp", "reduced-lp", "closed-form", "brute-force", "bm-bipartite", "bm-girth5", "forman")
EXACT_METHODS = ("full-lp", "reduced-lp", "closed-form", "brute-force")

DEFAULT_CORE_BUDGET = 12
# Integral optima take values in a width-4 window around x(u) = 0, so
# distances beyond 4 never bind.
DISTANCE_CAP = 4

LipschitzMap = dict[int, Fraction]


class CurvatureError(Exception):
    pass


class ClosedFormNotApplicable(CurvatureError):
    pass


class HypothesisViolated(CurvatureError):
    pass


@dataclass
class CurvatureResult:
    edge: tuple[int, int]
    d_u: int
    d_v: int
    W: Fraction | None
    kappa: Fraction
    method: str
    counts: dict[str, int] = field(default_factory=dict)
    W_plus: Fraction | None = None
    W_zero: Fraction | None = None
    W_minus: Fraction | None = None
    components: list[tuple[Fraction, Fraction]] | None = None
    witness: LipschitzMap | None = None


def _min(a, b):
    return a if a <= b else b


def _max(a, b):
    return a if a >= b else b


def _pos(a: Fraction) -> Fraction:
    return a if a > 0 else Fraction(0)


def transport_profit(g: Graph, u: int, v: int, x: Mapping[int, object]) -> Fraction:
    """m_u * sum of x over N(u) minus m_v * sum of x over N(v)."""
    total = Fraction(0)
    for end, sign in ((u, 1), (v, -1)):
        s = Fraction(0)
        for a in g.neighbours(end):
            if a not in x:
                raise KeyError(f"map has no value at vertex {g.labels[a]!r}")
            s += Fraction(x[a])
        total += sign * s / g.degree(end)
    return total


def is_lipschitz(g: Graph, x: Mapping[int, object]) -> tuple[bool, tuple[int, int] | None]:
    """Check ``|x(a) - x(b)| <= rho(a, b)`` over every pair of the domain."""
    if not x:
        return True, None
    values = {a: Fraction(t) for a, t in x.items()}
    spread = max(values.values()) - min(values.values())
    cap = int(spread)  # pairs farther apart than this cannot violate
    domain = sorted(values)
    for a in domain:
        near = bfs_distances(g, a, cap)
        for b in domain:
            if b <= a:
                continue
            d = near.get(b)
            if d is None:
                # farther apart than the spread of x
                continue
            if abs(values[a] - values[b]) > d:
                return False, (a, b)
    return True, None


def _core_distances(g: Graph, vertices) -> dict[int, dict[int, int]]:
    return {a: bfs_distances(g, a, DISTANCE_CAP) for a in vertices}


def _profit_costs(g: Graph, u: int, v: int, variables: list[int]) -> list[Fraction]:
    m_u, m_v = Fraction(1, g.degree(u)), Fraction(1, g.degree(v))
    nu, nv = g.neighbours(u), g.neighbours(v)
    return [(m_u if a in nu else 0) - (m_v if a in nv else 0) for a in variables]


def _base_result(g: Graph, part: CorePartition, W: Fraction, method: str) -> CurvatureResult:
    return CurvatureResult(
        edge=(part.u, part.v), d_u=part.d_u, d_v=part.d_v,
        W=W, kappa=1 - W, method=method, counts=part.counts(),
    )


def build_full_lp(
    g: Graph,
    u: int,
    v: int,
    *,
    constraints: Literal["distance", "incidence"] = "distance",
    alpha: int | None = None,
) -> tuple[LinearProgramme, list[int]]:
    """Programme over C(u, v) minus ``u`` (pinned at 0).

    ``constraints="distance"`` bounds every pair by its distance in ``g``;
    ``"incidence"`` uses only the edges of the subgraph induced on C(u, v).
    ``alpha`` pins ``x(v)``.
    """
    part = classify_core(g, u, v)
    variables = sorted(part.core - {u})
    pos = {a: i for i, a in enumerate(variables)}
    lower: list[Fraction | None] = []
    upper: list[Fraction | None] = []
    edges: dict[tuple[int, int], int] = {}
    if constraints == "distance":
        dist = _core_distances(g, part.core)
        for a in variables:
            r = dist[u][a]
            lower.append(Fraction(-r))
            upper.append(Fraction(r))
        for a in variables:
            for b in variables:
                if a >= b:
                    continue
                d = dist[a].get(b)
                if d is None:
                    continue
                i, j = pos[a], pos[b]
                # drop pairs the boxes already enforce
                if upper[i] - lower[j] <= d and upper[j] - lower[i] <= d:
                    continue
                edges[(i, j)] = d
    elif constraints == "incidence":
        nu = g.neighbours(u)
        for a in variables:
            lower.append(Fraction(-1) if a in nu else None)
            upper.append(Fraction(1) if a in nu else None)
        for a in variables:
            for b in g.neighbours(a):
                if b in pos and a < b:
                    edges[(pos[a], pos[b])] = 1
    else:
        raise ValueError(f"unknown constraint mode {constraints!r}")
    if alpha is not None:
        lower[pos[v]] = upper[pos[v]] = Fraction(alpha)
    return LinearProgramme.build(_profit_costs(g, u, v, variables), lower, upper, edges), variables


def wasserstein_full_lp(
    g: Graph,
    u: int,
    v: int,
    *,
    constraints: Literal["distance", "incidence"] = "distance",
    breakdown: bool = False,
) -> CurvatureResult:
    g.require_edge(u, v)
    part = classify_core(g, u, v)
    lp, variables = build_full_lp(g, u, v, constraints=constraints)
    sol = solve_lp(lp)
    res = _base_result(g, part, sol.value, "full-lp")
    values = sol.integral_witness if sol.integral_witness is not None else sol.witness
    res.witness = {u: Fraction(0), **{a: Fraction(t) for a, t in zip(variables, values)}}
    if breakdown:
        branch = []
        for alpha in (1, 0, -1):
            lp_a, _ = build_full_lp(g, u, v, constraints=constraints, alpha=alpha)
            branch.append(solve_lp(lp_a).value)
        res.W_plus, res.W_zero, res.W_minus = branch
        if max(branch) != sol.value:
            raise CurvatureError(f"branch maximum {max(branch)} differs from full optimum {sol.value}")
    return res


def wasserstein_brute_force(g: Graph, u: int, v: int, budget: int = DEFAULT_CORE_BUDGET) -> CurvatureResult:
    """Maximise profit over all integer Lipschitz maps on C(u, v)."""
    g.require_edge(u, v)
    part = classify_core(g, u, v)
    variables = sorted(part.core - {u, v})
    if len(variables) > budget:
        raise BudgetExceededError(
            f"core neighbourhood too large: {len(variables)} free vertices > budget {budget}")
    dist = _core_distances(g, part.core)
    pairs = {}
    for i, a in enumerate(variables):
        for j in range(i + 1, len(variables)):
            d = dist[a].get(variables[j])
            if d is not None:
                pairs[(i, j)] = d
    cost = _profit_costs(g, u, v, variables)
    m_u = part.m_u

    best: dict[int, tuple[Fraction, np.ndarray]] = {}
    for alpha in (1, 0, -1):
        ranges = []
        for a in variables:
            ru, rv = dist[u][a], dist[v][a]
            lo = max(-2, -ru, alpha - rv)
            hi = min(2, ru, alpha + rv)
            ranges.append(range(lo, hi + 1))
        rows = enumerate_feasible(ranges, pairs)
        if rows.shape[0] == 0:
            raise CurvatureError(f"no Lipschitz map with x(v) = {alpha}")
        value, k = best_row(rows, cost)
        best[alpha] = (value + m_u * alpha, rows[k])

    res = _base_result(g, part, max(best[a][0] for a in (1, 0, -1)), "brute-force")
    res.W_plus, res.W_zero, res.W_minus = best[1][0], best[0][0], best[-1][0]
    alpha = next(a for a in (1, 0, -1) if best[a][0] == res.W)
    res.witness = {u: Fraction(0), v: Fraction(alpha)}
    res.witness.update({a: Fraction(int(t)) for a, t in zip(variables, best[alpha][1])})
    return res


def w_plus_one(part: CorePartition) -> Fraction:
    return 1 - len(part.triangle) * _min(part.m_u, part.m_v)


def _component_lp(blocks, g: Graph) -> tuple[LinearProgramme, list[int]]:
    variables: list[int] = []
    cost, lower, upper = [], [], []
    for members, c, lo, hi in blocks:
        for a in sorted(members):
            variables.append(a)
            cost.append(c)
            lower.append(lo)
            upper.append(hi)
    pos = {a: i for i, a in enumerate(variables)}
    edges = [(pos[a], pos[b]) for a in variables for b in g.neighbours(a) if b in pos and a < b]
    return LinearProgramme.build(cost, lower, upper, edges), variables


def build_reduced_lp_w0(part: CorePartition, comp: RComponent, g: Graph) -> tuple[LinearProgramme, list[int]]:
    """x(v) = 0 branch; pentagon vertices are pinned outside the programme."""
    m_u, m_v = part.m_u, part.m_v
    return _component_lp([
        (comp.triangle, m_u - m_v, -1, 1),
        (comp.square_u, m_u, 0, 1),
        (comp.square_v, -m_v, -1, 0),
    ], g)


def build_reduced_lp_wminus(part: CorePartition, comp: RComponent, g: Graph) -> tuple[LinearProgramme, list[int]]:
    """x(v) = -1 branch over the whole component."""
    m_u, m_v = part.m_u, part.m_v
    return _component_lp([
        (comp.triangle, m_u - m_v, -1, 0),
        (comp.square_u, m_u, -1, 1),
        (comp.pentagon_u, m_u, 0, 1),
        (comp.square_v, -m_v, -2, 0),
        (comp.pentagon_v, -m_v, -2, -1),
        (comp.pentagon_uv, 0, -2, 1),
    ], g)


def _witness_value(sol: LPSolution) -> tuple:
    return sol.integral_witness if sol.integral_witness is not None else sol.witness


def wasserstein_reduced(g: Graph, u: int, v: int) -> CurvatureResult:
    g.require_edge(u, v)
    part = classify_core(g, u, v)
    comps = components_of_R(g, part)
    m_u, m_v = part.m_u, part.m_v

    w0_sols, wm_sols = [], []
    for comp in comps:
        lp0, vars0 = build_reduced_lp_w0(part, comp, g)
        lpm, varsm = build_reduced_lp_wminus(part, comp, g)
        w0_sols.append((solve_lp(lp0), vars0))
        wm_sols.append((solve_lp(lpm), varsm))

    w_plus = w_plus_one(part)
    w_zero = (part.n_u + len(part.pentagon_u)) * m_u + (part.n_v + len(part.pentagon_v)) * m_v
    w_zero += sum((s.value for s, _ in w0_sols), Fraction(0))
    w_minus = (part.n_u - 1) * m_u + 2 * part.n_v * m_v
    w_minus += sum((s.value for s, _ in wm_sols), Fraction(0))

    W = max(w_plus, w_zero, w_minus)
    res = _base_result(g, part, W, "reduced-lp")
    res.W_plus, res.W_zero, res.W_minus = w_plus, w_zero, w_minus
    res.components = [(a.value, b.value) for (a, _), (b, _) in zip(w0_sols, wm_sols)]

    x: LipschitzMap = {u: Fraction(0)}
    if W == w_plus:
        lead = Fraction(1) if m_u >= m_v else Fraction(0)
        x[v] = Fraction(1)
        x.update({a: Fraction(1) for a in g.neighbours(u) - part.triangle - {v}})
        x.update({a: Fraction(0) for a in g.neighbours(v) - part.triangle - {u}})
        x.update({a: lead for a in part.triangle})
        x.update({a: Fraction(1) for a in part.pentagon_uv})
    elif W == w_zero:
        x[v] = Fraction(0)
        x.update({a: Fraction(1) for a in part.pentagon_u | part.fr_u})
        x.update({a: Fraction(-1) for a in part.pentagon_v | part.fr_v})
        x.update({a: Fraction(0) for a in part.pentagon_uv})
        for sol, variables in w0_sols:
            x.update({a: Fraction(t) for a, t in zip(variables, _witness_value(sol))})
    else:
        x[v] = Fraction(-1)
        x.update({a: Fraction(1) for a in part.fr_u})
        x.update({a: Fraction(-2) for a in part.fr_v})
        for sol, variables in wm_sols:
            x.update({a: Fraction(t) for a, t in zip(variables, _witness_value(sol))})
    res.witness = x
    return res


def closed_form_applicable(comps: list[RComponent]) -> bool:
    return all(len(c.boundary) <= 2 for c in comps)


ClosedFormVariant = Literal["corrected", "original"]


def closed_form_terms(
    part: CorePartition,
    refined: RefinedCounts,
    variant: ClosedFormVariant = "corrected",
) -> tuple[Fraction, Fraction]:
    """The pair ``(k0, k_minus)`` with ``W_zero = W_plus + k0`` and
    ``W_minus = W_plus + k0 + k_minus``.

    ``variant="original"`` evaluates the expression as first stated, term for term.
    It takes the x(v) = 0 value of a triangle/v-square component to be
    ``(m_u - m_v) v (3 m_v - m_u)`` when ``m_u >= m_v``; the feasible
    corners actually give ``(m_u - m_v) v m_v``. The default ``"corrected"``
    variant uses the latter, which makes ``k0`` carry ``m_v ^ [m_u - m_v]+``
    and removes the square/triangle term from ``k_minus`` altogether.
    """
    if refined.sq_circ_u != refined.sq_circ_v or refined.pent_circ_u != refined.pent_circ_v:
        raise CurvatureError(f"unpaired square or pentagon classes: {refined}")
    m_u, m_v = part.m_u, part.m_v
    lo, hi = _min(m_u, m_v), _max(m_u, m_v)
    tri = len(part.triangle)
    sq_circ = refined.sq_circ_u
    pent_circ = refined.pent_circ_u
    sq_tri_u_term = _min(m_u, _pos(m_v - m_u)) * refined.sq_tri_u
    k_minus = 1 - m_u - m_v - hi * tri - lo * (sq_circ + pent_circ)
    if variant == "corrected":
        k0 = 1 - m_u - m_v - lo * (tri + sq_circ) - sq_tri_u_term - _min(m_v, _pos(m_u - m_v)) * refined.sq_tri_v
    elif variant == "original":
        slip = _min(m_v, _pos(2 * m_u - 3 * m_v))
        k0 = 1 - m_u - m_v - lo * (tri + sq_circ) - sq_tri_u_term - slip * refined.sq_tri_v
        k_minus -= (_min(m_v, _pos(m_u - m_v)) - slip) * refined.sq_tri_v
    else:
        raise ValueError(f"unknown closed-form variant {variant!r}")
    return k0, k_minus


def kappa_closed_form(
    part: CorePartition,
    refined: RefinedCounts,
    variant: ClosedFormVariant = "corrected",
) -> Fraction:
    """Curvature from class counts, for edges where every component of R
    meets at most two neighbours of the endpoints."""
    k0, k_minus = closed_form_terms(part, refined, variant)
    return _min(part.m_u, part.m_v) * len(part.triangle) - _pos(k0) - _pos(k_minus)


def closed_form(
    g: Graph,
    u: int,
    v: int,
    pentagon_reading: PentagonReading = "paired",
    variant: ClosedFormVariant = "corrected",
) -> CurvatureResult:
    g.require_edge(u, v)
    part = classify_core(g, u, v)
    comps = components_of_R(g, part)
    if not closed_form_applicable(comps):
        raise ClosedFormNotApplicable("closed form not applicable: a component of R meets more than two neighbours")
    refined = refine_counts(part, comps, g, pentagon_reading)
    kappa_value = kappa_closed_form(part, refined, variant)
    k0, k_minus = closed_form_terms(part, refined, variant)
    res = _base_result(g, part, 1 - kappa_value, "closed-form")
    res.W_plus = w_plus_one(part)
    res.W_zero = res.W_plus + k0
    res.W_minus = res.W_zero + k_minus
    return res


def w_bm_bipartite(g: Graph, u: int, v: int) -> Fraction:
    """Reference value of the refuted bipartite formula."""
    g.require_edge(u, v)
    if not is_bipartite(g):
        raise HypothesisViolated("formula hypothesis violated: graph is not bipartite")
    part = classify_core(g, u, v)
    m_u, m_v = part.m_u, part.m_v
    inner = 1 - m_u - m_v - m_u * len(part.square_u) - m_v * len(part.square_v)
    for comp in components_of_R(g, part):
        inner += _max(m_u * len(comp.square_u), m_v * len(comp.square_v))
    return 1 + 2 * _pos(inner)


def w_bm_girth5(g: Graph, u: int, v: int) -> Fraction:
    """Reference value of the refuted girth-five formula."""
    g.require_edge(u, v)
    if not girth_at_least(g, 5):
        raise HypothesisViolated("formula hypothesis violated: girth below 5")
    part = classify_core(g, u, v)
    m_u, m_v = part.m_u, part.m_v
    inner = 1 - m_u - m_v - m_u * len(part.pentagon_u) - m_v * len(part.pentagon_v)
    for comp in components_of_R(g, part):
        inner += _max(m_u * len(comp.pentagon_u), m_v * len(comp.pentagon_v))
    return 1 + _pos(1 - m_u - m_v) + _pos(inner)


def forman(g: Graph, u: int, v: int) -> Fraction:
    g.require_edge(u, v)
    du, dv = g.degree(u), g.degree(v)
    return -2 * du * dv * (1 - Fraction(1, du) - Fraction(1, dv))


def kappa(g: Graph, u: int, v: int, method: str = "auto", *, brute_budget: int = DEFAULT_CORE_BUDGET) -> CurvatureResult:
    """Dispatch to one computation route; ``auto`` prefers the closed form."""
    g.require_edge(u, v)
    if method == "auto":
        part = classify_core(g, u, v)
        if closed_form_applicable(components_of_R(g, part)):
            return closed_form(g, u, v)
        return wasserstein_reduced(g, u, v)
    if method == "full-lp":
        return wasserstein_full_lp(g, u, v, breakdown=True)
    if method == "reduced-lp":
        return wasserstein_reduced(g, u, v)
    if method == "closed-form":
        return closed_form(g, u, v)
    if method == "brute-force":
        return wasserstein_brute_force(g, u, v, budget=brute_budget)
    if method in ("bm-bipartite", "bm-girth5"):
        w = w_bm_bipartite(g, u, v) if method == "bm-bipartite" else w_bm_girth5(g, u, v)
        return _base_result(g, classify_core(g, u, v), w, method)
    if method == "forman":
        part = classify_core(g, u, v)
        res = _base_result(g, part, Fraction(0), method)
        res.W, res.kappa = None, forman(g, u, v)
        return res
    raise ValueError(f"unknown method {method!r}")
