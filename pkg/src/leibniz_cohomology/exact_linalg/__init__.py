"""Exact sparse linear algebra over Q with a modular fast path."""
from __future__ import annotations

from . import _backend
from .matrix import DimensionMismatch, SparseRationalMatrix, as_fraction
from .rank import (
    ColumnSpaceReducer,
    ModularDisagreement,
    RankCertificate,
    RankConfig,
    in_image,
    independent_rows,
    kernel_basis,
    rank,
    relations,
    select_primes,
)


def backend_name() -> str:
    return _backend.name


__all__ = [
    "ColumnSpaceReducer",
    "DimensionMismatch",
    "ModularDisagreement",
    "RankCertificate",
    "RankConfig",
    "SparseRationalMatrix",
    "as_fraction",
    "backend_name",
    "in_image",
    "independent_rows",
    "kernel_basis",
    "rank",
    "relations",
    "select_primes",
]
