"""Exact curvature of Hessian metrics and classical covariants of ternary forms."""

from .cones import classify_point, cone_comparison, curvature_scan, sample_cone
from .covariants import (
    aronhold_invariant,
    binary_power_of_linear,
    clebsch_covariant,
    equivariance_check,
    hessian_det,
)
from .curvature import (
    curvature_tensor_at,
    flatness_certificate,
    metric_at,
    sectional_curvature,
    sectional_curvature_on_M,
    theorem_curv_value,
)
from .poly import EpsForm, Form, derivative, evaluate, linear_substitute, parse_form
from .tangent import (
    closure_limit_expand,
    first_variation_clebsch,
    kernel_of_t,
    monomial_spectrum,
    t_operator,
    zariski_tangent_compare,
)
from .verify import run_verify_suite
from .xlinalg import RationalMatrix, Signature, determinant, inverse, nullspace, signature

__version__ = "0.1.0"

__all__ = [
    "EpsForm",
    "Form",
    "RationalMatrix",
    "Signature",
    "aronhold_invariant",
    "binary_power_of_linear",
    "classify_point",
    "clebsch_covariant",
    "closure_limit_expand",
    "cone_comparison",
    "curvature_scan",
    "curvature_tensor_at",
    "derivative",
    "determinant",
    "equivariance_check",
    "evaluate",
    "first_variation_clebsch",
    "flatness_certificate",
    "hessian_det",
    "inverse",
    "kernel_of_t",
    "linear_substitute",
    "metric_at",
    "monomial_spectrum",
    "nullspace",
    "parse_form",
    "run_verify_suite",
    "sample_cone",
    "sectional_curvature",
    "sectional_curvature_on_M",
    "signature",
    "t_operator",
    "theorem_curv_value",
    "zariski_tangent_compare",
]
