"""Ground sets, exact values, partitions, refinement predicates and oracles."""

from .errors import BudgetExceeded, Infeasible, InternalInconsistency, InvalidInput
from .oracle import (
    Flags,
    SubmodularOracle,
    check_monotone,
    check_posimodular,
    check_submodular,
    check_symmetric,
    evaluate_partition,
    make_coverage,
    make_function,
    make_graph_cut,
    make_hypergraph_cut,
    make_indegree,
    make_table,
    perturb_cardinality,
    perturb_strict,
    rational_gcd,
    strict_eps,
)
from .partition import Partition, is_st_separating
from .refine import (
    intersecting_pairs,
    is_intersecting,
    is_refinement,
    is_refinement_up_to_one_set,
    is_st_refinement,
    is_st_refinement_along,
    is_st_refinement_up_to_two_sets,
    is_st_uncrossable,
    st_refinement_pair,
)
from .sets import GroundSet, lowest, mask_of, members, submasks
from .values import Value, as_fraction

__all__ = [
    "BudgetExceeded",
    "Flags",
    "GroundSet",
    "Infeasible",
    "InternalInconsistency",
    "InvalidInput",
    "Partition",
    "SubmodularOracle",
    "Value",
    "as_fraction",
    "check_monotone",
    "check_posimodular",
    "check_submodular",
    "check_symmetric",
    "evaluate_partition",
    "intersecting_pairs",
    "is_intersecting",
    "is_refinement",
    "is_refinement_up_to_one_set",
    "is_st_refinement",
    "is_st_refinement_along",
    "is_st_refinement_up_to_two_sets",
    "is_st_separating",
    "is_st_uncrossable",
    "lowest",
    "make_coverage",
    "make_function",
    "make_graph_cut",
    "make_hypergraph_cut",
    "make_indegree",
    "make_table",
    "mask_of",
    "members",
    "perturb_cardinality",
    "perturb_strict",
    "rational_gcd",
    "st_refinement_pair",
    "strict_eps",
    "submasks",
]
