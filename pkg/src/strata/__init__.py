"""Combinatorial engine for stable dual graphs and boundary complexes."""

from .complexes import (
    BoundaryComplex,
    FlagVerdict,
    TheoremVerdict,
    WitnessReport,
    boundary_complex,
    check_theorem,
    flag_verdict,
    high_genus_pair_components,
    high_genus_triple,
    is_flag,
    pinwheel_divisor,
    pinwheel_family,
    pinwheel_pair_component,
    predicted_flag,
    universal_degeneration,
    witness_for,
)
from .enumeration import (
    BudgetExceededError,
    StratumSet,
    StratumStore,
    count_strata,
    default_store,
    divisors,
    smooth_point,
    strata,
)
from .graphs import (
    DualGraph,
    GnSignature,
    InvalidSignatureError,
    canonical_key,
    chain,
    is_degeneration,
    is_isomorphic,
    key_from_hex,
    key_to_hex,
    one_vertex,
    two_vertex_divisor,
    vertex_isomorphisms,
)
from .lattice import (
    DivisorSet,
    IntersectionReport,
    divisor_set,
    intersect_nonempty,
    intersect_nonempty_superset,
    intersection_components,
    is_tree_type,
    sigma,
    sigma_inverse,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryComplex",
    "BudgetExceededError",
    "DivisorSet",
    "DualGraph",
    "FlagVerdict",
    "GnSignature",
    "IntersectionReport",
    "InvalidSignatureError",
    "StratumSet",
    "StratumStore",
    "TheoremVerdict",
    "WitnessReport",
    "boundary_complex",
    "canonical_key",
    "chain",
    "check_theorem",
    "count_strata",
    "default_store",
    "divisor_set",
    "divisors",
    "flag_verdict",
    "high_genus_pair_components",
    "high_genus_triple",
    "intersect_nonempty",
    "intersect_nonempty_superset",
    "intersection_components",
    "is_degeneration",
    "is_flag",
    "is_isomorphic",
    "is_tree_type",
    "key_from_hex",
    "key_to_hex",
    "one_vertex",
    "pinwheel_divisor",
    "pinwheel_family",
    "pinwheel_pair_component",
    "predicted_flag",
    "sigma",
    "sigma_inverse",
    "smooth_point",
    "strata",
    "two_vertex_divisor",
    "universal_degeneration",
    "vertex_isomorphisms",
    "witness_for",
]
