"""Hypergraph orientations with (k, (s,t), ℓ) connectivity requirements."""

from .connectivity import (
    OrientationCertificate,
    Verification,
    check_feasibility,
    find_orientation,
    indegree_oracle,
    max_ell_given_k,
    max_k_given_ell,
    orientation_indegrees,
    p_stkl,
    partition_deficit,
    realize_indegree,
    reference_orientation,
    reorient_k1_k2,
    requirement,
    st_path_packing,
    verify_orientation,
    verify_reorientation,
)
from .model import Hypergraph, Orientation, delta_partition

__all__ = [
    "Hypergraph",
    "Orientation",
    "OrientationCertificate",
    "Verification",
    "check_feasibility",
    "delta_partition",
    "find_orientation",
    "indegree_oracle",
    "max_ell_given_k",
    "max_k_given_ell",
    "orientation_indegrees",
    "p_stkl",
    "partition_deficit",
    "realize_indegree",
    "reference_orientation",
    "reorient_k1_k2",
    "requirement",
    "st_path_packing",
    "verify_orientation",
    "verify_reorientation",
]
