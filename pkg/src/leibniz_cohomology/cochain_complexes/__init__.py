"""Leibniz and Chevalley-Eilenberg cochains, the homology-side complex, and invariants."""
from __future__ import annotations

from .assembly import (
    CEComplex,
    ChainMapMatrices,
    DualHomologyComplex,
    GradedComplex,
    LeibnizComplex,
    ProjectionPullback,
    ResourceLimit,
    ShiftedComplex,
    SkewInclusion,
)
from .cochains import ChainFunctional, HomologyChain, TensorCochain, WedgeCochain, load_cochain
from .grading import Grading, adjoint_grading, find_gradings, group_by_key, trivial_grading
from .indexing import sort_sign, tensor_index, tensor_tuple, wedge_basis, wedge_index
from .operators import (
    ce_coboundary,
    cochain_module,
    d_star,
    g_action,
    homology_differential,
    invariant_subspace,
    leibniz_coboundary,
    phi_iso,
    skew_extend,
    tensor_product,
    wedge_extend,
)

__all__ = [
    "CEComplex", "ChainMapMatrices", "DualHomologyComplex", "GradedComplex", "Grading",
    "LeibnizComplex", "ProjectionPullback", "ResourceLimit", "ShiftedComplex", "SkewInclusion",
    "adjoint_grading", "find_gradings", "group_by_key", "trivial_grading",
    "ChainFunctional", "HomologyChain", "TensorCochain", "WedgeCochain", "ce_coboundary",
    "cochain_module", "d_star", "g_action", "homology_differential", "invariant_subspace",
    "leibniz_coboundary", "load_cochain", "phi_iso", "skew_extend", "sort_sign", "tensor_index",
    "tensor_product", "tensor_tuple", "wedge_basis", "wedge_extend", "wedge_index",
]
