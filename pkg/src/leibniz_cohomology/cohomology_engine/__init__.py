"""Cohomology dimensions, induced maps and long exact sequences."""
from __future__ import annotations

from ..cochain_complexes import ResourceLimit
from .engine import (
    CohomologyReport,
    DegreeResult,
    cohomology_dims,
    cohomology_representatives,
    is_coboundary,
    is_cocycle,
)
from .handles import KINDS, Budget, ComplexHandle, NotACocycle, NotAChainMap, differential_rank
from .les import LESNode, LESReport, long_exact_sequence
from .maps import ChainMap, induced_map_rank

__all__ = [
    "Budget", "ChainMap", "CohomologyReport", "ComplexHandle", "DegreeResult", "KINDS", "LESNode",
    "LESReport", "NotACocycle", "NotAChainMap", "ResourceLimit", "cohomology_dims",
    "cohomology_representatives", "differential_rank", "induced_map_rank", "is_coboundary",
    "is_cocycle", "long_exact_sequence",
]
