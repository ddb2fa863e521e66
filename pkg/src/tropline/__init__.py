"""Tropically collinear point configurations, their canonical lines, and
the shellable complex they form."""
from .complex_topology import (
    CollinearComplex,
    HomologyReport,
    ResourceCapExceeded,
    ShellingReport,
    betti_numbers,
    build_complex,
    comb_to_tree,
    count_combs,
    enumerate_combs,
    euler_check,
    full_report,
    homology_facets,
    homology_rank_formula,
    sort_facets,
    stirling2,
    verify_shelling,
)
from .evaluation import MarkedLine, NotCollinear, PointConfig, canonical_tree, ev_points, pi_split, pi_tree
from .splits import (
    Coloring,
    IncompatibleSplits,
    PhyloTree,
    Split,
    compatible,
    decompose_at_leaf_one,
    enumerate_facets,
    enumerate_trivalent_trees,
    is_bicolored,
    subset_less,
    tree_from_splits,
    tree_less,
    tree_metric,
    tree_sort_key,
)
from .tropical_core import RankVerdict, normalize_point, trop_det3_is_singular, tropical_rank_le2

__version__ = "0.1.0"
