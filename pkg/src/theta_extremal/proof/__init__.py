"""Executable forms of the extraction and embedding lemmas."""

from .degrees import (
    RegularizeReport,
    Star,
    all_labeled_trees,
    extract_disjoint_stars,
    greedy_embed_tree,
    is_tree,
    is_tree_embedding,
    peel_to_min_degree,
    regularize_degrees,
)
from .thick import (
    ThickThinLabels,
    build_gamma_forest,
    classify_strong_thick,
    embed_theta_from_thick,
    gamma_lengths,
    greedy_thick_embedding,
    thick_bound,
)
from .trees import (
    AlmostTreeCert,
    BadSets,
    RegularTreeCert,
    Violation,
    appendix_constant,
    check_regular_almost_tree,
    compute_bad_sets,
    grow_regular_tree,
    prune_bad_sets,
    validate_regular_tree,
)

__all__ = [name for name in dir() if not name.startswith("_")]
