"""Hubiness, dependency length and crossings of linearly arranged trees."""

from deptree.arrangement import (
    CrossingStats,
    LengthStats,
    LinearArrangement,
    compose_reverse,
    crossing_count,
    length_stats,
)
from deptree.baseline import RandomBaseline, analytic_baseline, exact_pair_average, length_pmf, monte_carlo_baseline
from deptree.bounds import (
    BoundsReport,
    arc_crossing_capacity,
    bounds_report,
    cmax_from_length_moments,
    cmax_from_uncrossable,
    cmax_simple,
    cpairs_from_degrees,
    crossings_impossible,
    dmax_noncrossing,
    dmin_lower_hubiness,
    dmin_lower_star_ensemble,
    star_dmin_exact,
)
from deptree.oracles import (
    OracleResult,
    arrange_linear,
    arrange_star,
    brute_max_crossings,
    brute_max_noncrossing_D,
    brute_min_mean_length,
    decomposition_max_D,
)
from deptree.tree import (
    DegreeStats,
    Tree,
    degree_stats,
    enumerate_trees,
    make_linear_tree,
    make_star_tree,
    validate_tree,
)

__version__ = "0.1.0"
