"""Rank, kernel and image membership for ``SparseRationalMatrix``."""
from __future__ import annotations

import heapq
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import nextprime

from . import _backend
from .matrix import DimensionMismatch, SparseRationalMatrix, as_fraction

DEFAULT_MIN_PRIMES = 3
DEFAULT_MAX_PRIMES = 8
DEFAULT_SEED = 20240601
DEFAULT_EXACT_NNZ = 50_000
PRIME_LOW = 2**30
PRIME_HIGH = 2**31


class ModularDisagreement(ArithmeticError):
    """Modular ranks failed to reach the required agreement within budget."""

    def __init__(self, ranks: dict[int, int]):
        self.ranks = dict(ranks)
        super().__init__(f"modular ranks disagree: {self.ranks}")


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    method: str
    primes_used: tuple[int, ...] = ()
    agreement: bool = True

    def to_json(self) -> dict:
        return {"rank": self.rank, "method": self.method,
                "primes": list(self.primes_used), "agreement": self.agreement}


@dataclass
class RankConfig:
    """Knobs for the modular path and the auto-mode switch.

    Environment overrides: ``LEIBNIZ_COH_PRIMES`` (minimum agreeing primes),
    ``LEIBNIZ_COH_MAX_PRIMES`` and ``LEIBNIZ_COH_EXACT_NNZ``.
    """
    min_primes: int = DEFAULT_MIN_PRIMES
    max_primes: int = DEFAULT_MAX_PRIMES
    seed: int = DEFAULT_SEED
    exact_nnz: int = DEFAULT_EXACT_NNZ
    threads: int = 1
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_env(cls, **overrides) -> "RankConfig":
        cfg = cls()
        env = os.environ
        if "LEIBNIZ_COH_PRIMES" in env:
            cfg.min_primes = int(env["LEIBNIZ_COH_PRIMES"])
        if "LEIBNIZ_COH_MAX_PRIMES" in env:
            cfg.max_primes = int(env["LEIBNIZ_COH_MAX_PRIMES"])
        if "LEIBNIZ_COH_EXACT_NNZ" in env:
            cfg.exact_nnz = int(env["LEIBNIZ_COH_EXACT_NNZ"])
        for key, value in overrides.items():
            if value is not None:
                setattr(cfg, key, value)
        cfg.max_primes = max(cfg.max_primes, cfg.min_primes)
        return cfg


def select_primes(count: int, seed: int = DEFAULT_SEED) -> list[int]:
    """``count`` distinct primes in ``(2^30, 2^31)``, reproducible from ``seed``."""
    rng = random.Random(seed)
    primes: list[int] = []
    while len(primes) < count:
        p = int(nextprime(rng.randrange(PRIME_LOW, PRIME_HIGH - 2**20)))
        if p < PRIME_HIGH and p not in primes:
            primes.append(p)
    return primes


# ---------------------------------------------------------------- preparation

@dataclass
class _Prepared:
    indptr: np.ndarray
    indices: np.ndarray
    nums: np.ndarray
    ncols: int
    row_ids: np.ndarray  # processing position -> original row (of the oriented matrix)
    col_rank: np.ndarray  # original column -> permuted column


def _prepare(m: SparseRationalMatrix, transpose: bool) -> _Prepared:
    """Oriented integer CSR with short rows first and rare columns first."""
    rows, cols, nums, _ = m.coo()
    nrows, ncols = m.shape
    if transpose:
        rows, cols, nrows, ncols = cols, rows, ncols, nrows
    row_counts = np.bincount(rows, minlength=nrows)
    col_counts = np.bincount(cols, minlength=ncols)
    col_rank = np.empty(ncols, dtype=np.int64)
    col_rank[np.argsort(col_counts, kind="stable")] = np.arange(ncols, dtype=np.int64)
    nonempty = np.flatnonzero(row_counts)
    row_ids = nonempty[np.argsort(row_counts[nonempty], kind="stable")]
    position = np.full(nrows, -1, dtype=np.int64)
    position[row_ids] = np.arange(len(row_ids), dtype=np.int64)
    prow = position[rows]
    pcol = col_rank[cols]
    order = np.lexsort((pcol, prow))
    indptr = np.zeros(len(row_ids) + 1, dtype=np.int64)
    np.add.at(indptr, prow + 1, 1)
    np.cumsum(indptr, out=indptr)
    return _Prepared(indptr, pcol[order].astype(np.int64), nums[order], ncols, row_ids, col_rank)


def _orient(m: SparseRationalMatrix, transpose: bool | None) -> bool:
    if transpose is None:
        return m.nrows > m.ncols
    return transpose


def _mod_data(nums: np.ndarray, p: int) -> np.ndarray:
    if nums.dtype == object:
        return np.array([int(v) % p for v in nums], dtype=np.int64)
    return np.mod(nums, p).astype(np.int64)


def _run_mod_p(prep: _Prepared, p: int) -> tuple[int, list[int]]:
    r, piv = _backend.kernels.rank_mod_p(prep.indptr, prep.indices, _mod_data(prep.nums, p),
                                          prep.ncols, p)
    return r, [int(prep.row_ids[i]) for i in piv]


def _run_exact(prep: _Prepared) -> tuple[int, list[int]]:
    if prep.nums.dtype != object and _backend.kernels is not _backend.pykernels:
        try:
            r, piv = _backend.kernels.rank_fraction_free(prep.indptr, prep.indices,
                                                         prep.nums.astype(np.int64), prep.ncols)
            return r, [int(prep.row_ids[i]) for i in piv]
        except OverflowError:
            pass
    r, piv = _backend.pykernels.rank_fraction_free(prep.indptr, prep.indices, prep.nums,
                                                   prep.ncols)
    return r, [int(prep.row_ids[i]) for i in piv]


# ---------------------------------------------------------------- rank

def _resolve_mode(m: SparseRationalMatrix, mode: str, cfg: RankConfig) -> str:
    if mode not in ("exact", "modular", "auto"):
        raise ValueError(f"unknown rank mode {mode!r}")
    if mode == "auto":
        return "exact" if m.nnz <= cfg.exact_nnz else "modular"
    return mode


def _modular_ranks(prep: _Prepared, primes: Sequence[int], threads: int) -> dict[int, int]:
    if threads > 1 and len(primes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda p: _run_mod_p(prep, p)[0], primes))
    else:
        results = [_run_mod_p(prep, p)[0] for p in primes]
    return dict(zip(primes, results))


def rank(m: SparseRationalMatrix, mode: str = "auto", config: RankConfig | None = None,
         *, transpose: bool | None = None) -> RankCertificate:
    """Rank over Q.

    ``modular`` reduces modulo several large primes and accepts the rank once
    ``config.min_primes`` of them agree on the largest value seen; since a
    reduction can only lose rank, the largest value is the candidate.
    """
    cfg = config or RankConfig.from_env()
    mode = _resolve_mode(m, mode, cfg)
    if m.nnz == 0:
        return RankCertificate(0, "exact", (), True)
    prep = _prepare(m, _orient(m, transpose))
    if mode == "exact":
        return RankCertificate(_run_exact(prep)[0], "exact", (), True)
    pool = select_primes(cfg.max_primes, cfg.seed)
    ranks = _modular_ranks(prep, pool[:cfg.min_primes], cfg.threads)
    for p in pool[cfg.min_primes:]:
        best = max(ranks.values())
        if sum(1 for r in ranks.values() if r == best) >= cfg.min_primes:
            break
        ranks[p] = _run_mod_p(prep, p)[0]
    best = max(ranks.values())
    agreeing = tuple(p for p, r in ranks.items() if r == best)
    if len(agreeing) < cfg.min_primes:
        raise ModularDisagreement(ranks)
    return RankCertificate(best, "modular", agreeing[:cfg.min_primes], True)


def independent_rows(m: SparseRationalMatrix, mode: str = "exact",
                     config: RankConfig | None = None) -> list[int]:
    """Indices of rows forming a basis of the row space.

    In ``modular`` mode the rows are independent over Q (independence mod p
    lifts) but only span when the prime is lucky; callers verify.
    """
    if m.nnz == 0:
        return []
    prep = _prepare(m, False)
    if mode == "exact":
        return sorted(_run_exact(prep)[1])
    cfg = config or RankConfig.from_env()
    return sorted(_run_mod_p(prep, select_primes(1, cfg.seed)[0])[1])


# ---------------------------------------------------------------- exact solving

def _rref(rows: list[dict[int, Fraction]]) -> tuple[list[int], list[dict[int, Fraction]]]:
    """Reduced row echelon form of sparse Fraction rows; returns (pivots, rows)."""
    pivots: list[int] = []
    basis: list[dict[int, Fraction]] = []
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        for pc, prow in zip(pivots, basis):
            f = row.get(pc)
            if f:
                for c, v in prow.items():
                    nv = row.get(c, 0) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        pc = min(row)
        inv = 1 / row[pc]
        row = {c: v * inv for c, v in row.items()}
        for i, prow in enumerate(basis):
            f = prow.get(pc)
            if f:
                for c, v in row.items():
                    nv = prow.get(c, 0) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots.append(pc)
        basis.append(row)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [pivots[i] for i in order], [basis[i] for i in order]


def _fraction_rows(m: SparseRationalMatrix, rows: Sequence[int]) -> list[dict[int, Fraction]]:
    sub = m.select_rows(rows)
    den = sub.denominator
    out: list[dict[int, Fraction]] = [dict() for _ in rows]
    r, c, v, _ = sub.coo()
    for i, j, x in zip(r.tolist(), c.tolist(), v.tolist()):
        out[i][j] = Fraction(int(x), den)
    return out


def _kernel_from_rows(m: SparseRationalMatrix, rows: Sequence[int]) -> list[list[Fraction]]:
    pivots, basis = _rref(_fraction_rows(m, rows))
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.ncols
        v[free] = Fraction(1)
        for pc, prow in zip(pivots, basis):
            coef = prow.get(free)
            if coef:
                v[pc] = -coef
        vectors.append(v)
    return vectors


def _annihilates(m: SparseRationalMatrix, vectors: list[list[Fraction]]) -> bool:
    return all(not any(m.matvec(v)) for v in vectors)


def kernel_basis(m: SparseRationalMatrix, mode: str = "auto",
                 config: RankConfig | None = None) -> list[list[Fraction]]:
    """Basis of the right null space; every vector is verified exactly.

    The row basis may come from a modular elimination; the kernel itself is
    always computed and checked over Q, falling back to an exact row basis
    when the check fails.
    """
    cfg = config or RankConfig.from_env()
    if m.nnz == 0:
        return [[Fraction(int(i == j)) for i in range(m.ncols)] for j in range(m.ncols)]
    mode = _resolve_mode(m, mode, cfg)
    if mode == "modular":
        vectors = _kernel_from_rows(m, independent_rows(m, "modular", cfg))
        if _annihilates(m, vectors):
            return vectors
    vectors = _kernel_from_rows(m, independent_rows(m, "exact", cfg))
    if not _annihilates(m, vectors):  # pragma: no cover - exact path is a theorem
        raise ArithmeticError("kernel verification failed")
    return vectors


def in_image(m: SparseRationalMatrix, v, mode: str = "auto",
             config: RankConfig | None = None) -> tuple[bool, list[Fraction] | None]:
    """Decide whether ``v`` lies in the column space; return a witness ``w`` with ``m w = v``.

    A column basis B and a row basis of ``m[:, B]`` reduce the question to a
    square nonsingular system; its unique solution is checked against all
    rows, so a failed check proves ``v`` is outside the image.
    """
    cfg = config or RankConfig.from_env()
    if isinstance(v, dict):
        target = [Fraction(0)] * m.nrows
        for i, x in v.items():
            target[i] = as_fraction(x)
    else:
        target = [as_fraction(x) for x in v]
    if len(target) != m.nrows:
        raise DimensionMismatch(f"vector of length {len(target)} for {m.nrows} rows")
    if not any(target):
        return True, [Fraction(0)] * m.ncols
    if m.nnz == 0:
        return False, None
    mode = _resolve_mode(m, mode, cfg)
    attempts = ["modular", "exact"] if mode == "modular" else ["exact"]
    for attempt in attempts:
        witness = _solve(m, target, attempt, cfg)
        if witness is not None:
            return True, witness
    return False, None


def _solve(m: SparseRationalMatrix, target: list[Fraction], mode: str,
           cfg: RankConfig) -> list[Fraction] | None:
    cols = independent_rows(m.transpose(), mode, cfg)
    sub = m.select_columns(cols)
    rows = independent_rows(sub, mode, cfg)
    system = _fraction_rows(sub, rows)
    aug = len(cols)
    for i, r in enumerate(rows):
        if target[r]:
            system[i][aug] = target[r]
    pivots, basis = _rref(system)
    if aug in pivots:
        return None
    w_basis = [Fraction(0)] * len(cols)
    for pc, prow in zip(pivots, basis):
        w_basis[pc] = prow.get(aug, Fraction(0))
    witness = [Fraction(0)] * m.ncols
    for j, c in enumerate(cols):
        witness[c] = w_basis[j]
    if m.matvec(witness) != target:
        return None
    return witness


# ---------------------------------------------------------------- column-space reduction

def _run_exact_echelon(prep: _Prepared):
    if prep.nums.dtype != object and _backend.kernels is not _backend.pykernels:
        try:
            return _backend.kernels.rank_fraction_free(
                prep.indptr, prep.indices, prep.nums.astype(np.int64), prep.ncols, True)
        except OverflowError:
            pass
    return _backend.pykernels.rank_fraction_free(prep.indptr, prep.indices, prep.nums,
                                                 prep.ncols, True)


class ColumnSpaceReducer:
    """Exact normal forms modulo the column space of a matrix.

    ``reduce`` is linear: ``reduce(v) == 0`` iff ``v`` is in the column
    space, and linear relations among residues are exactly the relations
    among the inputs modulo that space.
    """

    def __init__(self, m: SparseRationalMatrix):
        self.nrows = m.nrows
        self.rank = 0
        self._pivots: dict[int, tuple[int, list[tuple[int, int]]]] = {}
        self._perm = np.arange(m.nrows, dtype=np.int64)
        self._inverse = self._perm
        if m.nnz == 0:
            return
        prep = _prepare(m, True)
        self._perm = prep.col_rank
        self._inverse = np.argsort(prep.col_rank)
        r, _, (pstart, pcols, pvals) = _run_exact_echelon(prep)
        self.rank = int(r)
        pstart = [int(x) for x in pstart]
        pcols = [int(x) for x in pcols]
        pvals = [int(x) for x in pvals]
        for k in range(len(pstart) - 1):
            a, b = pstart[k], pstart[k + 1]
            self._pivots[pcols[a]] = (pvals[a], list(zip(pcols[a + 1:b], pvals[a + 1:b])))

    def reduce(self, v) -> dict[int, Fraction]:
        """Residue of ``v`` (dict or sequence indexed by row) as a sparse dict."""
        items = v.items() if isinstance(v, dict) else enumerate(v)
        acc: dict[int, Fraction] = {}
        for i, x in items:
            x = as_fraction(x)
            if x:
                if not 0 <= i < self.nrows:
                    raise DimensionMismatch(f"index {i} outside {self.nrows} rows")
                acc[int(self._perm[i])] = x
        heap = list(acc)
        heapq.heapify(heap)
        out: dict[int, Fraction] = {}
        while heap:
            c = heapq.heappop(heap)
            x = acc.pop(c, 0)
            if not x:
                continue
            piv = self._pivots.get(c)
            if piv is None:
                out[int(self._inverse[c])] = x
                continue
            lead, rest = piv
            f = x / lead
            for cc, vv in rest:
                old = acc.get(cc)
                if old is None:
                    heapq.heappush(heap, cc)
                    acc[cc] = -f * vv
                else:
                    acc[cc] = old - f * vv
        return out

    def contains(self, v) -> bool:
        return not self.reduce(v)


def relations(vectors: Sequence[dict[int, Fraction]], size: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{y : sum_i y_i vectors[i] == 0}`` for sparse Fraction vectors."""
    count = len(vectors)
    if count == 0:
        return []
    nrows = 1 + max((max(v) for v in vectors if v), default=-1)
    if size is not None:
        nrows = max(nrows, size)
    entries = [(r, j, x) for j, v in enumerate(vectors) for r, x in v.items()]
    m = SparseRationalMatrix.from_entries(max(nrows, 1), count, entries)
    return kernel_basis(m, "exact")
