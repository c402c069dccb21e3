"""Path components, fundamental groups and the group engines behind them."""
from .coset import CosetTable, FiniteGroup, finite_group, is_subgroup_of, same_subgroup, todd_coxeter
from .fundamental import (
    Groupoidification,
    Partition,
    Pi1Map,
    Pi1Presentation,
    SpanningTree,
    Zigzag,
    basepoint_change_map,
    component_presentations,
    groupoidification_finite,
    induced_pi1_map,
    inverse_of,
    is_groupoid,
    is_path_connected,
    is_pi1_injective,
    is_weak_1_equivalence,
    pi0,
    pi1_presentation,
    spanning_tree,
    zigzag_equiv,
    zigzag_word,
)
from .snf import AbelianInvariants, Lattice, abelianization, invariant_factors, smith_normal_form
from .words import GroupPresentation, SubgroupSpec, inverse_word, mul_words, reduce_word

__all__ = [
    "AbelianInvariants",
    "CosetTable",
    "FiniteGroup",
    "GroupPresentation",
    "Groupoidification",
    "Lattice",
    "Partition",
    "Pi1Map",
    "Pi1Presentation",
    "SpanningTree",
    "SubgroupSpec",
    "Zigzag",
    "abelianization",
    "basepoint_change_map",
    "component_presentations",
    "finite_group",
    "groupoidification_finite",
    "induced_pi1_map",
    "invariant_factors",
    "inverse_of",
    "inverse_word",
    "is_groupoid",
    "is_path_connected",
    "is_pi1_injective",
    "is_subgroup_of",
    "is_weak_1_equivalence",
    "mul_words",
    "pi0",
    "pi1_presentation",
    "reduce_word",
    "same_subgroup",
    "smith_normal_form",
    "spanning_tree",
    "todd_coxeter",
    "zigzag_equiv",
    "zigzag_word",
]
