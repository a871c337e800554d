"""Named cochains of h_n and exact checks of their relations and invariances."""
from __future__ import annotations

from .catalog import NamedCochain, NamedCochainCatalog, build_catalog
from .verify import (
    Check,
    VerificationReport,
    expected_invariant_tables,
    invariant_tables,
    j_complex_coboundary,
    mixed_coboundary,
    verify_invariance,
    verify_relations,
)

__all__ = [
    "Check", "NamedCochain", "NamedCochainCatalog", "VerificationReport", "build_catalog",
    "expected_invariant_tables", "invariant_tables", "j_complex_coboundary", "mixed_coboundary",
    "verify_invariance", "verify_relations",
]
