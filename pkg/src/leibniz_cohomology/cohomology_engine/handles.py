"""Complex handles, size budgets and sector-wise rank bookkeeping."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..cochain_complexes import (
    CEComplex,
    ChainFunctional,
    ChainMapMatrices,
    DualHomologyComplex,
    GradedComplex,
    LeibnizComplex,
    ProjectionPullback,
    ResourceLimit,
    ShiftedComplex,
    SkewInclusion,
    TensorCochain,
    WedgeCochain,
    adjoint_grading,
    group_by_key,
    trivial_grading,
)
from ..exact_linalg import RankCertificate, RankConfig, SparseRationalMatrix, rank
from ..lie_core import GModule, LieAlgebra, make_module

KINDS = ("leibniz", "ce", "homology", "rel", "cr")


class NotACocycle(ValueError):
    """``is_coboundary`` was called on a cochain with nonzero coboundary."""


class NotAChainMap(ValueError):
    """A proposed chain map does not commute with the differentials."""

    def __init__(self, degree: int, detail: str = ""):
        self.degree = degree
        super().__init__(f"map does not commute with the differentials in degree {degree} {detail}".strip())


@dataclass
class Budget:
    """Largest target dimension allowed per differential, by rank mode.

    Environment overrides: ``LEIBNIZ_COH_EXACT_ROWS`` and ``LEIBNIZ_COH_MODULAR_ROWS``.
    """
    exact_rows: int = 300_000
    modular_rows: int = 2_000_000

    @classmethod
    def from_env(cls, **overrides) -> "Budget":
        b = cls()
        if "LEIBNIZ_COH_EXACT_ROWS" in os.environ:
            b.exact_rows = int(os.environ["LEIBNIZ_COH_EXACT_ROWS"])
        if "LEIBNIZ_COH_MODULAR_ROWS" in os.environ:
            b.modular_rows = int(os.environ["LEIBNIZ_COH_MODULAR_ROWS"])
        for key, value in overrides.items():
            if value is not None:
                setattr(b, key, value)
        return b

    def resolve(self, mode: str, rows: int, cols: int, degree: int) -> str:
        """Mode to use for a differential with ``rows`` target dimensions."""
        required = {"degree": degree, "rows": rows, "cols": cols, "mode": mode,
                    "exact_rows": self.exact_rows, "modular_rows": self.modular_rows}
        if rows > self.modular_rows:
            raise ResourceLimit(f"degree {degree}: {rows} x {cols} exceeds the modular budget "
                                f"of {self.modular_rows} rows", required)
        if mode == "exact" and rows > self.exact_rows:
            raise ResourceLimit(f"degree {degree}: {rows} x {cols} exceeds the exact budget "
                                f"of {self.exact_rows} rows", required)
        if mode == "auto" and rows > self.exact_rows:
            return "modular"
        return mode


@dataclass
class ComplexHandle:
    """A cochain complex together with what is needed to build its matrices.

    For ``rel`` and ``cr`` the complex is the quotient of ``ambient`` by the
    image of ``sub`` under ``inclusion``; handle degree ``k`` is quotient
    degree ``k + offset``.
    """
    kind: str
    algebra: LieAlgebra
    module: GModule | None
    ambient: GradedComplex
    sub: GradedComplex | None = None
    inclusion: ChainMapMatrices | None = None
    offset: int = 0
    n: int | None = None
    coefficients: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def is_quotient(self) -> bool:
        return self.sub is not None

    # construction ---------------------------------------------------------

    @staticmethod
    def _module(alg: LieAlgebra, coefficients) -> GModule:
        return coefficients if isinstance(coefficients, GModule) else make_module(alg, coefficients)

    @staticmethod
    def _n(alg: LieAlgebra, n):
        if n is not None:
            return n
        tail = (alg.name or "").rsplit("_", 1)[-1]
        return int(tail) if tail.isdigit() else None

    @classmethod
    def leibniz(cls, alg: LieAlgebra, coefficients="adjoint", n=None, grading=None) -> "ComplexHandle":
        V = cls._module(alg, coefficients)
        return cls("leibniz", alg, V, LeibnizComplex(alg, V, grading), n=cls._n(alg, n),
                   coefficients=V.kind)

    @classmethod
    def ce(cls, alg: LieAlgebra, coefficients="adjoint", n=None, grading=None) -> "ComplexHandle":
        V = cls._module(alg, coefficients)
        return cls("ce", alg, V, CEComplex(alg, V, grading), n=cls._n(alg, n), coefficients=V.kind)

    @classmethod
    def homology(cls, alg: LieAlgebra, module: GModule | None = None, n=None,
                 grading=None) -> "ComplexHandle":
        """Functionals on ``V (x) Lambda^k g`` with ``d*``; coadjoint cohomology for the adjoint ``V``."""
        V = module or make_module(alg, "adjoint")
        if grading is None and V.kind == "adjoint":
            grading = adjoint_grading(alg)
        return cls("homology", alg, V, DualHomologyComplex(alg, V, grading), n=cls._n(alg, n),
                   coefficients="coadjoint" if V.kind == "adjoint" else f"dual({V.kind})")

    @classmethod
    def rel(cls, alg: LieAlgebra, coefficients="adjoint", n=None) -> "ComplexHandle":
        """``C^k_rel = CL^{k+2} / CE^{k+2}``."""
        V = cls._module(alg, coefficients)
        cl = LeibnizComplex(alg, V)
        ce = CEComplex(alg, V, cl.grading)
        return cls("rel", alg, V, cl, ce, SkewInclusion(ce, cl), offset=2, n=cls._n(alg, n),
                   coefficients=V.kind)

    @classmethod
    def cr(cls, alg: LieAlgebra, n=None) -> "ComplexHandle":
        """``CR^m = Hom(g (x) Lambda^{m+1} g, F) / Hom(Lambda^{m+2} g, F)``."""
        D = DualHomologyComplex(alg, make_module(alg, "adjoint"), adjoint_grading(alg))
        A = ShiftedComplex(CEComplex(alg, make_module(alg, "trivial"), trivial_grading(alg)), 1)
        return cls("cr", alg, D.V, D, A, ProjectionPullback(A, D), offset=1, n=cls._n(alg, n),
                   coefficients="trivial")

    # basic data -----------------------------------------------------------

    def dim(self, k: int) -> int:
        j = k + self.offset
        if j < 0:
            return 0
        base = self.ambient.dim(j)
        return base - self.sub.dim(j) if self.sub is not None else base

    def cochain(self, vector: dict, k: int):
        """Cochain object for coordinates in the ambient degree-``k`` space."""
        j = k + self.offset
        alg, V = self.algebra, self.module
        if isinstance(self.ambient, LeibnizComplex):
            return TensorCochain.from_vector(vector, j, alg.dim, V.dim)
        if isinstance(self.ambient, CEComplex):
            return WedgeCochain.from_vector(vector, j, alg.dim, V.dim)
        return ChainFunctional.from_vector(vector, j, alg.dim, V.dim)


# ---------------------------------------------------------------- sectors and ranks

def keys_of(cx: GradedComplex, k: int, coords) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.int64)
    if isinstance(cx, LeibnizComplex):
        return cx.keys_of(coords, k)
    return cx.keys(k)[coords]


def sectors(cx: GradedComplex, k: int) -> dict[tuple, np.ndarray]:
    if cx.dim(k) == 0:
        return {}
    return group_by_key(cx.keys(k))


def combine(certs: list[RankCertificate], total: int | None = None) -> RankCertificate:
    """One certificate for a direct sum of blocks."""
    value = sum(c.rank for c in certs) if total is None else total
    modular = [c for c in certs if c.method == "modular"]
    if not modular:
        return RankCertificate(value, "exact", (), True)
    primes = tuple(sorted({p for c in modular for p in c.primes_used}))
    return RankCertificate(value, "modular", primes, all(c.agreement for c in certs))


def run_blocks(tasks, threads: int):
    """Evaluate zero-argument callables, concurrently when ``threads > 1``; order preserved."""
    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda f: f(), tasks))
    return [f() for f in tasks]


def differential_rank(h: ComplexHandle, k: int, mode: str = "auto", config: RankConfig | None = None,
                      budget: Budget | None = None) -> RankCertificate:
    """Rank of the handle's degree-``k`` differential, summed over sectors."""
    cfg = config or RankConfig.from_env()
    budget = budget or Budget.from_env()
    j = k + h.offset
    if j < 0 or h.dim(k) == 0 or h.dim(k + 1) == 0:
        return RankCertificate(0, "exact", (), True)
    B = h.ambient
    block_mode = budget.resolve(mode, B.dim(j + 1), B.dim(j), k)
    groups = sectors(B, j)
    if not h.is_quotient:
        tasks = [lambda cols=cols: rank(B.differential(j, cols), block_mode, cfg)
                 for cols in groups.values()]
        return combine(run_blocks(tasks, cfg.threads))
    A, P = h.sub, h.inclusion
    a_groups = sectors(A, j + 1)

    def quotient_block(key, cols):
        a_cols = a_groups.get(key, np.zeros(0, dtype=np.int64))
        m = SparseRationalMatrix.hstack([B.differential(j, cols), P.matrix(j + 1, a_cols)])
        cert = rank(m, block_mode, cfg)
        return cert, cert.rank - len(a_cols)

    results = run_blocks([lambda key=key, cols=cols: quotient_block(key, cols)
                          for key, cols in groups.items()], cfg.threads)
    return combine([c for c, _ in results], sum(r for _, r in results))
