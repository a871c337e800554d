"""Cohomology dimensions, representatives and cocycle tests."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..exact_linalg import (
    ColumnSpaceReducer,
    RankCertificate,
    RankConfig,
    SparseRationalMatrix,
    in_image,
    kernel_basis,
    relations,
)
from .handles import (
    Budget,
    ComplexHandle,
    NotACocycle,
    differential_rank,
    keys_of,
    sectors,
)


@dataclass
class DegreeResult:
    degree: int
    dim: int
    cochains: int
    rank_out: RankCertificate
    rank_in: RankCertificate
    representatives: list | None = None


@dataclass
class CohomologyReport:
    algebra: str
    n: int | None
    coefficients: str
    complex: str
    degrees: list[DegreeResult] = field(default_factory=list)

    @property
    def dims(self) -> list[int]:
        return [d.dim for d in self.degrees]

    def to_json(self) -> dict:
        ranks = {}
        for d in self.degrees:
            ranks[str(d.degree)] = d.rank_out.to_json()
        return {"algebra": self.algebra, "n": self.n, "coefficients": self.coefficients,
                "complex": self.complex,
                "dims": {str(d.degree): d.dim for d in self.degrees},
                "ranks": ranks, "exactness": []}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _vector_of(f) -> dict[int, Fraction]:
    return f.to_vector() if hasattr(f, "to_vector") else {int(i): Fraction(v) for i, v in f.items()}


def _apply(m: SparseRationalMatrix, cols: np.ndarray, vec: dict[int, Fraction]) -> dict[int, Fraction]:
    local = {int(c): j for j, c in enumerate(cols)}
    out = m.matvec({local[i]: v for i, v in vec.items()})
    return {i: v for i, v in enumerate(out) if v}


def cohomology_dims(h: ComplexHandle, k_max: int, mode: str = "auto", config: RankConfig | None = None,
                    budget: Budget | None = None, representatives: bool = False,
                    k_min: int = 0) -> CohomologyReport:
    """``dim H^k = dim C^k - rank d^k - rank d^{k-1}`` for ``k_min <= k <= k_max``."""
    if k_max < k_min or k_min < 0:
        raise ValueError("need 0 <= k_min <= k_max")
    cfg = config or RankConfig.from_env()
    budget = budget or Budget.from_env()
    report = CohomologyReport(h.algebra.name, h.n, h.coefficients, h.kind)
    prev = differential_rank(h, k_min - 1, mode, cfg, budget) if k_min > 0 else RankCertificate(0, "exact")
    for k in range(k_min, k_max + 1):
        out = differential_rank(h, k, mode, cfg, budget)
        dim = h.dim(k) - out.rank - prev.rank
        if dim < 0:  # pragma: no cover - would mean an inconsistent complex
            raise ArithmeticError(f"negative cohomology dimension in degree {k}")
        reps = cohomology_representatives(h, k) if representatives else None
        if reps is not None and len(reps) != dim:  # pragma: no cover - consistency guard
            raise ArithmeticError(f"degree {k}: {len(reps)} representatives for dimension {dim}")
        report.degrees.append(DegreeResult(k, dim, h.dim(k), out, prev, reps))
        prev = out
    return report


def cohomology_representatives(h: ComplexHandle, k: int) -> list | None:
    """Exact cocycles whose classes form a basis of ``H^k``; ``None`` for quotient complexes."""
    if h.is_quotient:
        return None
    cx = h.ambient
    reps = []
    prev_groups = sectors(cx, k - 1) if k > 0 else {}
    for key, cols in sectors(cx, k).items():
        kernel = kernel_basis(cx.differential(k, cols), "exact")
        if not kernel:
            continue
        if key in prev_groups:
            image = cx.differential(k - 1, prev_groups[key])
        else:
            image = SparseRationalMatrix.zeros(cx.dim(k), 1)
        reducer = ColumnSpaceReducer(image)
        chosen_residues: list[dict] = []
        for vec in kernel:
            global_vec = {int(cols[j]): v for j, v in enumerate(vec) if v}
            residue = reducer.reduce(global_vec)
            if not residue:
                continue
            if relations(chosen_residues + [residue]):
                continue
            chosen_residues.append(residue)
            reps.append(h.cochain(global_vec, k))
    return reps


def _coboundary_vector(f, h: ComplexHandle, k: int) -> dict[int, Fraction]:
    cx = h.ambient
    vec = _vector_of(f)
    if not vec:
        return {}
    cols = np.array(sorted(vec), dtype=np.int64)
    return _apply(cx.differential(k + h.offset, cols), cols, vec)


def _degree(f) -> int:
    return f.arity


def is_cocycle(f, h: ComplexHandle) -> bool:
    """``delta f == 0``; for a quotient, ``delta f`` must lie in the subcomplex."""
    k = _degree(f) - h.offset
    image = _coboundary_vector(f, h, k)
    if not h.is_quotient or not image:
        return not image
    j = k + 1 + h.offset
    cols = _sector_columns(h.sub, j, h.ambient, image)
    return in_image(h.inclusion.matrix(j, cols), image, "exact")[0]


def _sector_columns(source, j: int, target, vec: dict, vec_degree: int | None = None) -> np.ndarray:
    """Degree-``j`` source columns sharing a key with the support of ``vec``.

    ``vec`` lives in degree ``vec_degree`` (default ``j``) of the target.
    """
    if source.dim(j) == 0:
        return np.zeros(0, dtype=np.int64)
    deg = j if vec_degree is None else vec_degree
    wanted = {tuple(int(x) for x in row)
              for row in keys_of(target, deg, np.array(sorted(vec), dtype=np.int64))}
    groups = sectors(source, j)
    parts = [cols for key, cols in groups.items() if key in wanted]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def is_coboundary(f, h: ComplexHandle):
    """``(True, witness)`` when ``f = delta(witness)`` (modulo the subcomplex for quotients).

    Raises ``NotACocycle`` when ``f`` is not a cocycle.
    """
    if not is_cocycle(f, h):
        raise NotACocycle("is_coboundary needs a cocycle")
    vec = _vector_of(f)
    k = _degree(f) - h.offset
    if not vec:
        return True, h.cochain({}, k - 1) if k + h.offset > 0 else None
    j = k + h.offset
    if j == 0:
        return False, None
    cx = h.ambient
    cols = _sector_columns(cx, j - 1, cx, vec, j)
    blocks = [cx.differential(j - 1, cols)] if len(cols) else []
    a_cols = np.zeros(0, dtype=np.int64)
    if h.is_quotient:
        a_cols = _sector_columns(h.sub, j, cx, vec)
        if len(a_cols):
            blocks.append(h.inclusion.matrix(j, a_cols))
    if not blocks:
        return False, None
    ok, witness = in_image(SparseRationalMatrix.hstack(blocks), vec, "exact")
    if not ok:
        return False, None
    w = {int(cols[i]): v for i, v in enumerate(witness[:len(cols)]) if v}
    return True, h.cochain(w, k - 1)
