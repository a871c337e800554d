"""Symbolic vector fields, connections and curvature with rational-function coefficients."""
from __future__ import annotations

from .connection import (
    Connection,
    DegenerateMetric,
    Metric,
    NotLeviCivita,
    NotSymmetric,
    covariant_derivative,
    curvature,
    delta_nabla,
    delta_nabla_sum,
    laplace_beltrami,
    require_levi_civita,
    ricci,
    scalar_curvature,
    trace_sum,
)
from .fields import (
    RationalFunction,
    Space,
    VectorField,
    bracket_table_mismatches,
    decompose_affine,
    h_n_fields,
    rotation_field,
    vf_bracket,
)
from .identities import (
    BATTERY,
    DEFAULT_SEED,
    IDENTITIES,
    BatteryReport,
    IdentityReport,
    flat_laplacian,
    hyperbolic_plane,
    one_dim_formula,
    random_field,
    random_polynomial,
    round_sphere_chart,
    run_battery,
    standard_checks,
    verify_identity,
)

__all__ = [
    "BATTERY", "BatteryReport", "Connection", "DEFAULT_SEED", "DegenerateMetric", "IDENTITIES",
    "IdentityReport", "Metric", "NotLeviCivita", "NotSymmetric", "RationalFunction", "Space",
    "VectorField", "bracket_table_mismatches", "covariant_derivative", "curvature",
    "decompose_affine", "delta_nabla", "delta_nabla_sum", "flat_laplacian", "h_n_fields",
    "hyperbolic_plane", "laplace_beltrami", "one_dim_formula", "random_field",
    "random_polynomial", "require_levi_civita", "ricci", "rotation_field", "round_sphere_chart",
    "run_battery", "scalar_curvature", "standard_checks", "trace_sum", "verify_identity", "vf_bracket",
]
