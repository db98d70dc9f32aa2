"""Exact divisor-class calculus on moduli spaces of pointed curves."""

from modcalc.certificate import Certificate, recheck_certificate
from modcalc.classes import (
    canonical_class,
    delta_class,
    k3_locus_class,
    lambda_class,
    logan_class,
    psi_class,
    slope,
    slope_info,
    total_boundary,
)
from modcalc.curves import CurveClass, curve_from_pairings, pair
from modcalc.lefschetz import (
    PencilSpec,
    cross_check,
    gamma_curve,
    pencil_surface_invariants,
)
from modcalc.maps import (
    AttachFixedCurve,
    AttachRationalTail,
    Forgetful,
    MapChain,
    Permutation,
    pullback,
    pullback_chain,
    pushforward_curve,
)
from modcalc.pic import (
    B,
    BoundaryIndex,
    Delta,
    DivisorClass,
    ModuliSignature,
    ParamValue,
    Psi,
    basis,
    boundary,
    canonicalize_index,
    combine,
)
from modcalc.rigidity import (
    CoveringCertificate,
    PeelingResult,
    certify_kodaira_zero_m1010,
    decomposition_m1010,
    extremal_face_check,
    peel,
    slope_bound,
    theta_curve,
    xi_curve,
)

__all__ = [
    "Certificate",
    "recheck_certificate",
    "canonical_class",
    "delta_class",
    "k3_locus_class",
    "lambda_class",
    "logan_class",
    "psi_class",
    "slope",
    "slope_info",
    "total_boundary",
    "CurveClass",
    "curve_from_pairings",
    "pair",
    "PencilSpec",
    "cross_check",
    "gamma_curve",
    "pencil_surface_invariants",
    "AttachFixedCurve",
    "AttachRationalTail",
    "Forgetful",
    "MapChain",
    "Permutation",
    "pullback",
    "pullback_chain",
    "pushforward_curve",
    "B",
    "BoundaryIndex",
    "Delta",
    "DivisorClass",
    "ModuliSignature",
    "ParamValue",
    "Psi",
    "basis",
    "boundary",
    "canonicalize_index",
    "combine",
    "CoveringCertificate",
    "PeelingResult",
    "certify_kodaira_zero_m1010",
    "decomposition_m1010",
    "extremal_face_check",
    "peel",
    "slope_bound",
    "theta_curve",
    "xi_curve",
]

__version__ = "0.1.0"
