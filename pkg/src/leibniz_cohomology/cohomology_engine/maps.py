"""Chain maps between complex handles and the ranks they induce on cohomology."""
from __future__ import annotations

from typing import Callable

import numpy as np

from ..cochain_complexes import SkewInclusion
from ..exact_linalg import ColumnSpaceReducer, SparseRationalMatrix, kernel_basis, relations
from .handles import ComplexHandle, NotAChainMap, keys_of, sectors

MatrixFn = Callable[[int, np.ndarray], SparseRationalMatrix]


def _same_grading(a, b) -> bool:
    ga, gb = a.grading, b.grading
    return all(np.array_equal(x, y) for x, y in zip(
        (ga.weights, ga.parities), (gb.weights, gb.parities)))


class ChainMap:
    """Degreewise matrices ``P_k : source^k -> target^k`` between non-quotient handles."""

    def __init__(self, source: ComplexHandle, target: ComplexHandle, matrix: MatrixFn, name: str = ""):
        if source.is_quotient or target.is_quotient:
            raise ValueError("chain maps are defined between non-quotient handles")
        self.source, self.target, self.name = source, target, name
        self._matrix = matrix

    def matrix(self, k: int, columns=None) -> SparseRationalMatrix:
        cols = np.arange(self.source.dim(k), dtype=np.int64) if columns is None else np.asarray(columns)
        return self._matrix(k, cols)

    @classmethod
    def identity(cls, h: ComplexHandle) -> "ChainMap":
        def m(k, cols):
            return SparseRationalMatrix.from_entries(h.dim(k), len(cols),
                                                     [(int(c), j, 1) for j, c in enumerate(cols)])
        return cls(h, h, m, "identity")

    @classmethod
    def zero(cls, source: ComplexHandle, target: ComplexHandle) -> "ChainMap":
        return cls(source, target, lambda k, cols: SparseRationalMatrix.zeros(target.dim(k), len(cols)),
                   "zero")

    @classmethod
    def skew_inclusion(cls, ce: ComplexHandle, cl: ComplexHandle) -> "ChainMap":
        """``CE^k(g;V) -> CL^k(g;V)``: the pullback inducing ``H_Lie -> HL``."""
        p = SkewInclusion(ce.ambient, cl.ambient)
        return cls(ce, cl, p.matrix, "skew_inclusion")

    def sectors_compatible(self, k: int | None = None) -> bool:
        """True when both sides share a grading that the map preserves (in degree ``k``)."""
        S, T = self.source.ambient, self.target.ambient
        if not _same_grading(S, T):
            return False
        if k is None or S.dim(k) == 0:
            return True
        rows, cols, _, _ = self.matrix(k).coo()
        return bool((keys_of(T, k, rows) == keys_of(S, k, cols)).all())

    def check(self, k: int) -> None:
        """Exact check of ``d_T P_k = P_{k+1} d_S`` on every basis element of degree ``k``."""
        S, T = self.source.ambient, self.target.ambient
        if S.dim(k) == 0:
            return
        groups = sectors(S, k) if self.sectors_compatible(k) else {(): np.arange(S.dim(k))}
        for cols in groups.values():
            if _compose(T, k, self.matrix(k, cols)) != _compose_map(self, k, S.differential(k, cols)):
                raise NotAChainMap(k)


def _support(m: SparseRationalMatrix) -> np.ndarray:
    return np.unique(m.coo()[0])


def _compose(T, k: int, m: SparseRationalMatrix) -> SparseRationalMatrix:
    """``d_T^k m`` using only the columns of ``d_T`` that ``m`` reaches."""
    rows = _support(m)
    if T.dim(k + 1) == 0:
        return SparseRationalMatrix.zeros(0, m.ncols)
    if not len(rows):
        return SparseRationalMatrix.zeros(T.dim(k + 1), m.ncols)
    return T.differential(k, rows) @ m.select_rows(rows)


def _compose_map(f: "ChainMap", k: int, m: SparseRationalMatrix) -> SparseRationalMatrix:
    """``P_{k+1} m`` using only the columns of ``P_{k+1}`` that ``m`` reaches."""
    rows = _support(m)
    if f.target.ambient.dim(k + 1) == 0:
        return SparseRationalMatrix.zeros(0, m.ncols)
    if not len(rows):
        return SparseRationalMatrix.zeros(f.target.ambient.dim(k + 1), m.ncols)
    return f.matrix(k + 1, rows) @ m.select_rows(rows)


def induced_map_rank(f: ChainMap, k: int, check: bool = True) -> int:
    """Rank of ``H^k(source) -> H^k(target)``.

    Source cocycles are mapped and reduced modulo target coboundaries; the
    rank is the number of independent residues.
    """
    if check:
        f.check(k)
        if k > 0:
            f.check(k - 1)
    S, T = f.source.ambient, f.target.ambient
    if S.dim(k) == 0 or T.dim(k) == 0:
        return 0
    if f.sectors_compatible(k) and (k == 0 or f.sectors_compatible(k - 1)):
        s_groups = sectors(S, k)
        t_groups = sectors(T, k - 1) if k > 0 else {}
    else:
        s_groups = {(): np.arange(S.dim(k), dtype=np.int64)}
        t_groups = {(): np.arange(T.dim(k - 1), dtype=np.int64)} if k > 0 and T.dim(k - 1) else {}
    total = 0
    for key, cols in s_groups.items():
        kernel = kernel_basis(S.differential(k, cols), "exact")
        if not kernel:
            continue
        image = f.matrix(k, cols)
        if key in t_groups:
            reducer = ColumnSpaceReducer(T.differential(k - 1, t_groups[key]))
        else:
            reducer = ColumnSpaceReducer(SparseRationalMatrix.zeros(T.dim(k), 1))
        residues = []
        for vec in kernel:
            mapped = image.matvec(vec)
            residues.append(reducer.reduce({i: v for i, v in enumerate(mapped) if v}))
        residues = [r for r in residues if r]
        total += len(residues) - len(relations(residues))
    return total

