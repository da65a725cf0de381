"""Finite topological spaces of p-subgroups of finite permutation groups.

The package builds the posets of p-subgroups of a finite permutation group
(all of them, the elementary abelian ones, the radical ones, and friends),
their subdivisions and orbit spaces under conjugation, and checks the
classical contractibility, homology, and fusion facts about them with exact
arithmetic.  See the `pspaces` command-line tool for the report harness.
"""

from .permgrp import (
    Group,
    Permutation,
    Subgroup,
    builtin_group,
    center,
    centralizer,
    conjugate_subgroup,
    fc_representative,
    fully_centralized,
    generate_group,
    is_abelian,
    is_elementary_abelian,
    load_group,
    normalizer,
    omega1,
    p_core,
    p_part,
    sylow,
    sylow_subgroups,
)
from .poset import (
    HomologyProfile,
    Pi1Status,
    Poset,
    SimplicialComplex,
    beat_points,
    core,
    face_poset,
    homology,
    homotopy_equivalent,
    is_contractible,
    order_complex,
    pi1_status,
    poset_to_dot,
    poset_to_json,
    posets_isomorphic,
    strong_deformation_retract,
    subdivide,
)
from .pposets import (
    ChainSubcomplexPoset,
    PSubgroupPoset,
    build_chain_subcomplex_poset,
    build_p_subgroup_poset,
    central_omega,
    chain_complex_quotient,
    chain_quotient,
    check_fusion_certificate,
    elementary_hull,
    elementary_orbit_contraction,
    fusion_certificate,
    omega_comparable_subposet,
    p_rank,
    rank_gap,
    sylow_chain_contraction,
    verify_conical_contraction,
)
from .quotient import (
    GPoset,
    OrbitPoset,
    alpha_map,
    chain_orbit_poset,
    orbit_complex,
    orbit_poset,
    property_a,
    property_b,
    subdivide_gposet,
    subdivision_quotient_iso,
)

__all__ = [
    "ChainSubcomplexPoset",
    "GPoset",
    "Group",
    "HomologyProfile",
    "OrbitPoset",
    "PSubgroupPoset",
    "Permutation",
    "Pi1Status",
    "Poset",
    "SimplicialComplex",
    "Subgroup",
    "alpha_map",
    "beat_points",
    "build_chain_subcomplex_poset",
    "build_p_subgroup_poset",
    "builtin_group",
    "center",
    "centralizer",
    "central_omega",
    "chain_complex_quotient",
    "chain_orbit_poset",
    "chain_quotient",
    "check_fusion_certificate",
    "conjugate_subgroup",
    "core",
    "elementary_hull",
    "elementary_orbit_contraction",
    "face_poset",
    "fc_representative",
    "fully_centralized",
    "fusion_certificate",
    "generate_group",
    "homology",
    "homotopy_equivalent",
    "is_abelian",
    "is_contractible",
    "is_elementary_abelian",
    "load_group",
    "normalizer",
    "omega1",
    "omega_comparable_subposet",
    "orbit_complex",
    "orbit_poset",
    "p_core",
    "p_part",
    "p_rank",
    "pi1_status",
    "poset_to_dot",
    "poset_to_json",
    "posets_isomorphic",
    "property_a",
    "property_b",
    "rank_gap",
    "strong_deformation_retract",
    "subdivide",
    "subdivide_gposet",
    "subdivision_quotient_iso",
    "sylow",
    "sylow_chain_contraction",
    "sylow_subgroups",
    "verify_conical_contraction",
]
