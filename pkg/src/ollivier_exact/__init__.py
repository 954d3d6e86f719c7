"""Exact Ollivier curvature of graph edges, with cross-checked solvers."""

from .counterexamples import (
    CounterexampleInstance,
    RefutationReport,
    build_ce_bipartite,
    build_ce_girth5,
    verify_refutation,
)
from .curvature import (
    CurvatureResult,
    closed_form,
    forman,
    kappa,
    kappa_closed_form,
    transport_profit,
    wasserstein_brute_force,
    wasserstein_full_lp,
    wasserstein_reduced,
)
from .graph import Graph, build_graph, parse_edge_list
from .partition import CorePartition, classify_core, components_of_R, refine_counts

__all__ = [
    "CorePartition",
    "CounterexampleInstance",
    "CurvatureResult",
    "Graph",
    "RefutationReport",
    "build_ce_bipartite",
    "build_ce_girth5",
    "build_graph",
    "classify_core",
    "closed_form",
    "components_of_R",
    "forman",
    "kappa",
    "kappa_closed_form",
    "parse_edge_list",
    "refine_counts",
    "transport_profit",
    "verify_refutation",
    "wasserstein_brute_force",
    "wasserstein_full_lp",
    "wasserstein_reduced",
]
