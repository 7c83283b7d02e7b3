"""Exact linear systems of hypersurfaces.

Linear systems with assigned base points (including infinitely near ones),
containment and trace constructions, Groebner normal forms, and finite-field
searches for hypersurfaces with prescribed singularities.  All arithmetic is
exact: rationals, GF(p), or GF(p^k).
"""

from .ambient import Ambient, AmbientPoint, affine_space, product_projective, projective_space
from .blowup import (
    BlowupChainSpec,
    TangentDirection,
    impose_chain,
    multiplicity_sequence,
    pencil_parameter_lift,
    quadrifolium,
    sextic_pencil_scan,
)
from .conditions import (
    SamplePoints,
    SchemeSpec,
    image_system,
    impose_containment,
    impose_points,
    point_condition_rows,
    random_points,
    sample_points,
    taylor_row,
)
from .fields import (
    GF,
    CoefficientField,
    FieldElement,
    FieldMismatchError,
    LiftResult,
    crt_combine,
    lift_rationals,
    rational_reconstruct,
    rationals,
)
from .groebner import groebner_basis, in_ideal, normal_form, s_polynomial
from .linsys import CoefficientSolver, LinearSys, poly_gcd
from .poly import MultiPoly, PolyRing, random_poly
from .singular import (
    ScanMatch,
    ScanResult,
    SingularPointReport,
    classify,
    invariant_family_scan,
    singular_points,
)

__all__ = [
    "GF",
    "Ambient",
    "AmbientPoint",
    "BlowupChainSpec",
    "CoefficientField",
    "CoefficientSolver",
    "FieldElement",
    "FieldMismatchError",
    "LiftResult",
    "LinearSys",
    "MultiPoly",
    "PolyRing",
    "SamplePoints",
    "ScanMatch",
    "ScanResult",
    "SchemeSpec",
    "SingularPointReport",
    "TangentDirection",
    "affine_space",
    "classify",
    "crt_combine",
    "groebner_basis",
    "image_system",
    "impose_chain",
    "impose_containment",
    "impose_points",
    "in_ideal",
    "invariant_family_scan",
    "lift_rationals",
    "multiplicity_sequence",
    "normal_form",
    "pencil_parameter_lift",
    "point_condition_rows",
    "poly_gcd",
    "product_projective",
    "projective_space",
    "quadrifolium",
    "random_points",
    "random_poly",
    "rational_reconstruct",
    "rationals",
    "s_polynomial",
    "sample_points",
    "sextic_pencil_scan",
    "singular_points",
    "taylor_row",
]

__version__ = "0.1.0"
