"""The two graph families on which the Bhattacharya–Mukherjee formulas
for W fail, each with a Lipschitz map whose transport profit beats the
formula's value."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .curvature import (
    CurvatureError,
    LipschitzMap,
    is_lipschitz,
    transport_profit,
    w_bm_bipartite,
    w_bm_girth5,
    wasserstein_full_lp,
)
from .graph import Graph, build_graph, girth_at_least, is_bipartite
from .partition import classify_core

Family = Literal["bipartite", "girth5"]
FAMILIES: tuple[str, ...] = ("bipartite", "girth5")


class ConstructionError(AssertionError):
    """A built instance does not have the structure it was built to have."""


@dataclass(frozen=True)
class CounterexampleInstance:
    graph: Graph
    edge: tuple[int, int]
    witness: LipschitzMap
    w_bm: Fraction
    witness_profit: Fraction
    family: Family
    parameter: int


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ConstructionError(what)


def _witness(g: Graph, values: dict[str, int]) -> LipschitzMap:
    return {g.index(lab): Fraction(val) for lab, val in values.items()}


def _check_witness(g: Graph, u: int, v: int, x: LipschitzMap, profit: Fraction) -> None:
    _require(set(x) == set(range(len(g))), "witness does not cover every vertex")
    ok, pair = is_lipschitz(g, x)
    _require(ok, f"witness not Lipschitz at {pair}")
    got = transport_profit(g, u, v, x)
    _require(got == profit, f"witness profit {got} differs from {profit}")


def build_ce_bipartite(u_size: int) -> CounterexampleInstance:
    """Bipartite family, edge ``u0 v0``; ``U`` has ``u_size`` members
    labelled ``U1, U2, ...``, each adjacent to ``v0`` and ``v2``."""
    if u_size < 1:
        raise ValueError("u_size must be at least 1")
    U = [f"U{i}" for i in range(1, u_size + 1)]
    pairs = [("u0", "v0"), ("u0", "v1"), ("u0", "v2"), ("u1", "v0"), ("u1", "v1"), ("u1", "v2")]
    for w in U:
        pairs += [(w, "v0"), (w, "v2")]
    g = build_graph(pairs)
    u, v = g.index("u0"), g.index("v0")

    part = classify_core(g, u, v)
    names = lambda s: {g.label(a) for a in s}
    _require(is_bipartite(g), "graph is not bipartite")
    _require(part.d_u == 3 and part.d_v == u_size + 2, "unexpected endpoint degrees")
    _require(names(part.square_u) == {"v1", "v2"}, "square class of u0 is not {v1, v2}")
    _require(names(part.square_v) == {"u1", *U}, "square class of v0 is not {u1} with U")

    values = {"v1": 1, "u0": 0, "u1": 0, "v0": -1, "v2": -1}
    values.update({w: -2 for w in U})
    x = _witness(g, values)
    profit = Fraction(5 * u_size - 2, 3 * u_size + 6)
    _check_witness(g, u, v, x, profit)
    return CounterexampleInstance(g, (u, v), x, w_bm_bipartite(g, u, v), profit, "bipartite", u_size)


def build_ce_girth5(p_size: int) -> CounterexampleInstance:
    """Girth-five family, edge ``u v``.

    ``P = {P1, ...}`` hangs off ``v`` and is matched to ``Q = {Q1, ...}``,
    all of which hang off ``pu1``. The extra 5-cycles ``u pu1 q2 pv v`` and
    ``u pu2 q3 pv v`` put ``pu1`` and ``pu2`` in the pentagon class of ``u``.
    """
    if p_size < 1:
        raise ValueError("p_size must be at least 1")
    P = [f"P{i}" for i in range(1, p_size + 1)]
    Q = [f"Q{i}" for i in range(1, p_size + 1)]
    pairs = [("u", "v"), ("u", "pu1"), ("u", "pu2"), ("v", "pv")]
    pairs += [("v", p) for p in P]
    pairs += [("pu1", q) for q in Q]
    pairs += list(zip(Q, P))
    pairs += [("pu1", "q2"), ("q2", "pv"), ("pu2", "q3"), ("q3", "pv")]
    g = build_graph(pairs)
    u, v = g.index("u"), g.index("v")

    part = classify_core(g, u, v)
    names = lambda s: {g.label(a) for a in s}
    _require(girth_at_least(g, 5) and not girth_at_least(g, 6), "girth is not exactly 5")
    _require(part.d_u == 3 and part.d_v == p_size + 2, "unexpected endpoint degrees")
    _require(names(part.pentagon_u) == {"pu1", "pu2"}, "pentagon class of u is not {pu1, pu2}")
    _require(names(part.pentagon_v) == {"pv", *P}, "pentagon class of v is not {pv} with P")
    _require(not (part.triangle or part.square_u or part.square_v), "edge lies on a triangle or square")

    values = {"pu2": 1, "u": 0, "pu1": 0, "q3": 0, "v": -1, "pv": -1, "q2": -1}
    values.update({q: -1 for q in Q})
    values.update({p: -2 for p in P})
    x = _witness(g, values)
    profit = Fraction(2 * p_size + 1, p_size + 2)
    _check_witness(g, u, v, x, profit)
    return CounterexampleInstance(g, (u, v), x, w_bm_girth5(g, u, v), profit, "girth5", p_size)


def build_counterexample(family: str, parameter: int) -> CounterexampleInstance:
    if family == "bipartite":
        return build_ce_bipartite(parameter)
    if family == "girth5":
        return build_ce_girth5(parameter)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


@dataclass(frozen=True)
class RefutationReport:
    family: str
    parameter: int
    witness_lipschitz: bool
    profit_matches: bool
    hypothesis_holds: bool
    w_bm_matches: bool
    lp_dominates_witness: bool
    refuted: bool
    W: Fraction
    w_bm: Fraction
    witness_profit: Fraction

    @property
    def checks_pass(self) -> bool:
        """Every verdict except the refutation itself."""
        return (self.witness_lipschitz and self.profit_matches and self.hypothesis_holds
                and self.w_bm_matches and self.lp_dominates_witness)


def verify_refutation(inst: CounterexampleInstance) -> RefutationReport:
    """Recompute every fact the refutation rests on, independently of the
    builder's own assertions."""
    g = inst.graph
    u, v = inst.edge
    lipschitz, _ = is_lipschitz(g, inst.witness)
    profit_ok = transport_profit(g, u, v, inst.witness) == inst.witness_profit
    if inst.family == "bipartite":
        hypothesis = is_bipartite(g)
        bm = w_bm_bipartite
    else:
        hypothesis = girth_at_least(g, 5)
        bm = w_bm_girth5
    try:
        w_bm = bm(g, u, v)
    except CurvatureError:
        w_bm = None
    W = wasserstein_full_lp(g, u, v).W
    return RefutationReport(
        family=inst.family,
        parameter=inst.parameter,
        witness_lipschitz=lipschitz,
        profit_matches=profit_ok,
        hypothesis_holds=hypothesis,
        w_bm_matches=w_bm == inst.w_bm,
        lp_dominates_witness=W >= inst.witness_profit,
        refuted=W > inst.w_bm,
        W=W,
        w_bm=inst.w_bm,
        witness_profit=inst.witness_profit,
    )
