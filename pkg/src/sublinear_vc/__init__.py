"""Sublinear-time (2, eps)-estimation of the minimum vertex cover size.

Graphs are accessed only through degree, neighbor and vertex-pair
queries; every query is counted.
"""

from .baselines import brute_force_min_vc, greedy_cover_size, greedy_matching
from .binomial import sample_binomial
from .estimator import EstimateConfig, EstimateReport, Estimator, estimate_vc, exact_cover_size, run_trials, sample_size
from .generators import GenSpec, gen_lb_family, gen_named, gen_regular, generate
from .multigraph import MultiGraph, QueryStats, load_graph, parse_graph
from .oracles import OracleContext, ReferenceOracle, derive_ranking, mo, vo, vo_partner
from .ranks import RankEngine
from .transforms import dense_adapter, high_degree_shortcut, shadow_average_degree, shadow_bounded_degree

__version__ = "0.1.0"

__all__ = [
    "MultiGraph", "QueryStats", "load_graph", "parse_graph",
    "RankEngine", "sample_binomial",
    "OracleContext", "ReferenceOracle", "derive_ranking", "mo", "vo", "vo_partner",
    "shadow_bounded_degree", "shadow_average_degree", "dense_adapter", "high_degree_shortcut",
    "EstimateConfig", "EstimateReport", "Estimator", "estimate_vc", "exact_cover_size", "run_trials", "sample_size",
    "brute_force_min_vc", "greedy_matching", "greedy_cover_size",
    "GenSpec", "gen_lb_family", "gen_named", "gen_regular", "generate",
]
