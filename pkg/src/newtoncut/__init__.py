"""Exact toric tools for Newton polyhedra, drop sets of B1-facets and weighted blow-ups."""

from .bcut import (
    BSet,
    BSetError,
    Refusal,
    b_cut,
    choose_compatible,
    choose_consistent,
    classify_cones,
    detect_b1,
    general_bset,
    slope_classes,
)
from .blowup import (
    cox_presentation,
    numerical_data,
    proper_transform,
    relative_canonical,
    verify_desingularization,
)
from .fan import Fan, dual_pair, frugal_simplicial_subdivision, normal_fan
from .nondegeneracy import OracleConfig, face_verdict, nondegeneracy_check
from .polyhedron import HRep, NewtonPolyhedron, VRep, dd_convert, from_halfspaces, newton_polyhedron
from .polynomial import Polynomial, parse_polynomial
from .zeta import (
    RationalFunction,
    actual_poles,
    assemble_topological_zeta,
    candidate_poles,
    reduced_candidate_poles,
    removable_slope_classes,
)

__all__ = [
    "BSet", "BSetError", "Refusal", "b_cut", "choose_compatible", "choose_consistent",
    "classify_cones", "detect_b1", "general_bset", "slope_classes",
    "cox_presentation", "numerical_data", "proper_transform", "relative_canonical",
    "verify_desingularization", "Fan", "dual_pair", "frugal_simplicial_subdivision",
    "normal_fan", "OracleConfig", "face_verdict", "nondegeneracy_check", "HRep",
    "NewtonPolyhedron", "VRep", "dd_convert", "from_halfspaces", "newton_polyhedron",
    "Polynomial", "parse_polynomial", "RationalFunction", "actual_poles",
    "assemble_topological_zeta", "candidate_poles", "reduced_candidate_poles",
    "removable_slope_classes",
]
