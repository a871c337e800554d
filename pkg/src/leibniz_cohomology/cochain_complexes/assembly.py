"""Coboundary and chain-map matrices, assembled block by block.

Every complex exposes ``dim(k)``, ``keys(k)`` (grading keys of its basis, see
``grading``) and ``differential(k, columns)``: the matrix of the degree-``k``
differential restricted to the given source basis indices, with rows in
global target coordinates.  Columns sharing a key map into rows with that
key, so blocks can be ranked independently.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, lcm

import numpy as np

from ..exact_linalg import SparseRationalMatrix
from ..lie_core import GModule, LieAlgebra
from ..lie_core.modules import make_module
from .cochains import ChainFunctional, HomologyChain, WedgeCochain
from .grading import Grading, find_gradings
from .indexing import wedge_basis, wedge_positions
from .operators import ce_coboundary, homology_differential


class ResourceLimit(RuntimeError):
    """A requested matrix exceeds the configured size budget."""

    def __init__(self, message: str, required: dict | None = None):
        super().__init__(message)
        self.required = dict(required or {})


def _common_denominator(values) -> int:
    den = 1
    for v in values:
        den = lcm(den, Fraction(v).denominator)
    return den


def _columns(columns, total: int) -> np.ndarray:
    if columns is None:
        return np.arange(total, dtype=np.int64)
    return np.asarray(columns, dtype=np.int64).reshape(-1)


class GradedComplex:
    """Interface shared by all cochain complexes handled by the engine."""

    name = "complex"
    grading: Grading

    def dim(self, k: int) -> int:  # pragma: no cover - interface
        raise NotImplementedError

    def keys(self, k: int) -> np.ndarray:  # pragma: no cover - interface
        raise NotImplementedError

    def differential(self, k: int, columns=None) -> SparseRationalMatrix:  # pragma: no cover
        raise NotImplementedError

    def nnz_estimate(self, k: int, columns: int) -> int:
        return columns * 8


# ---------------------------------------------------------------- Leibniz

class LeibnizComplex(GradedComplex):
    """``CL^k = Hom(g^{(x)k}, V)``; coordinate ``code(I) * dim V + t``."""

    name = "leibniz"

    def __init__(self, alg: LieAlgebra, V: GModule, grading: Grading | None = None):
        self.alg, self.V = alg, V
        self.grading = grading or find_gradings(alg, V)
        act = [(g, s, t, v) for g in range(alg.dim) for (s, t), v in V.action(g).items() if v]
        brk = [(a, b, m, c) for a, b, m, c in alg.structure_constants() if c]
        self.den = _common_denominator([x[3] for x in act] + [x[3] for x in brk])
        self._act = self._table(act, key=2)
        self._brk = self._table(brk, key=2)
        self._per_col = (sum(len(x[0]) for x in self._act.values()) / max(V.dim, 1),
                         sum(len(x[0]) for x in self._brk.values()) / max(alg.dim, 1))

    def _table(self, rows, key):
        out: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
        for r in rows:
            out.setdefault(r[key], []).append(r)
        return {k: (np.array([r[0] for r in v], dtype=np.int64),
                    np.array([r[1] for r in v], dtype=np.int64),
                    np.array([int(r[3] * self.den) for r in v], dtype=np.int64))
                for k, v in out.items()}

    def dim(self, k: int) -> int:
        return self.alg.dim ** k * self.V.dim

    def digits(self, codes: np.ndarray, k: int) -> np.ndarray:
        d = self.alg.dim
        out = np.empty((len(codes), k), dtype=np.int64)
        rest = np.array(codes, dtype=np.int64)
        for pos in range(k - 1, -1, -1):
            rest, out[:, pos] = np.divmod(rest, d)
        return out

    def keys(self, k: int) -> np.ndarray:
        idx = np.arange(self.dim(k), dtype=np.int64)
        return self.keys_of(idx, k)

    def keys_of(self, coords: np.ndarray, k: int) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        codes, t = np.divmod(coords, self.V.dim)
        return self.grading.keys(self.digits(codes, k), t)

    def nnz_estimate(self, k: int, columns: int) -> int:
        a, b = self._per_col
        return int(columns * ((k + 1) * a + k * (k + 1) / 2 * b)) + 1

    def differential(self, k: int, columns=None) -> SparseRationalMatrix:
        d, dv = self.alg.dim, self.V.dim
        cols = _columns(columns, self.dim(k))
        codes, t = np.divmod(cols, dv)
        local = np.arange(len(cols), dtype=np.int64)
        out_r, out_c, out_v = [], [], []
        # g_p . f(..^g_p..) with sign (-1)^(p+1), 0-based p
        for t0, (gs, ss, vs) in self._act.items():
            idx = np.flatnonzero(t == t0)
            if not len(idx):
                continue
            ci = np.repeat(codes[idx], len(gs))
            li = np.repeat(local[idx], len(gs))
            g = np.tile(gs, len(idx))
            s = np.tile(ss, len(idx))
            v = np.tile(vs, len(idx))
            for p in range(k + 1):
                scale = d ** (k - p)
                hi, lo = np.divmod(ci, scale)
                out_r.append(((hi * d + g) * scale + lo) * dv + s)
                out_c.append(li)
                out_v.append(v if p % 2 else -v)
        # f(.., [g_i, g_j] in slot i, ..^g_j..) with sign (-1)^(j+1), 0-based i < j
        for i in range(k):
            digit = (codes // d ** (k - 1 - i)) % d
            for m, (as_, bs, cs) in self._brk.items():
                idx = np.flatnonzero(digit == m)
                if not len(idx):
                    continue
                ci = np.repeat(codes[idx], len(as_))
                ti = np.repeat(t[idx], len(as_))
                li = np.repeat(local[idx], len(as_))
                a = np.tile(as_, len(idx))
                b = np.tile(bs, len(idx))
                c = np.tile(cs, len(idx))
                prefix = ci // d ** (k - i)
                for j in range(i + 1, k + 1):
                    mid = (ci // d ** (k - j)) % d ** (j - i - 1)
                    suffix = ci % d ** (k - j)
                    new = (((prefix * d + a) * d ** (j - i - 1) + mid) * d + b) * d ** (k - j) + suffix
                    out_r.append(new * dv + ti)
                    out_c.append(li)
                    out_v.append(c if j % 2 else -c)
        nrows = self.dim(k + 1)
        if not out_r:
            return SparseRationalMatrix.zeros(nrows, len(cols))
        return SparseRationalMatrix(nrows, len(cols), np.concatenate(out_r), np.concatenate(out_c),
                                    np.concatenate(out_v), self.den)


# ---------------------------------------------------------------- column-generated complexes

class _ColumnComplex(GradedComplex):
    """Differential built by applying a pointwise operator to basis elements."""

    def _column(self, k: int, index: int) -> dict[int, Fraction]:  # pragma: no cover
        raise NotImplementedError

    def differential(self, k: int, columns=None) -> SparseRationalMatrix:
        cols = _columns(columns, self.dim(k))
        return SparseRationalMatrix.from_columns(self.dim(k + 1),
                                                 [self._column(k, int(c)) for c in cols])


class CEComplex(_ColumnComplex):
    """``C^k = Hom(Lambda^k g, V)``; coordinate ``rank(S) * dim V + t``."""

    name = "ce"

    def __init__(self, alg: LieAlgebra, V: GModule, grading: Grading | None = None):
        self.alg, self.V = alg, V
        self.grading = grading or find_gradings(alg, V)

    def dim(self, k: int) -> int:
        if k < 0 or k > self.alg.dim:
            return 0
        return comb(self.alg.dim, k) * self.V.dim

    def keys(self, k: int) -> np.ndarray:
        basis = _wedge_array(self.alg.dim, k)
        dv = self.V.dim
        idx = np.repeat(basis, dv, axis=0)
        t = np.tile(np.arange(dv, dtype=np.int64), len(basis))
        return self.grading.keys(idx, t)

    def _column(self, k: int, index: int) -> dict[int, Fraction]:
        S = wedge_basis(self.alg.dim, k)[index // self.V.dim]
        f = WedgeCochain(k, self.alg.dim, self.V.dim, {(S, index % self.V.dim): 1})
        return _coords(ce_coboundary(f, self.alg, self.V))


def _coords(cochain) -> dict[int, Fraction]:
    return {cochain.coordinate(key): v for key, v in cochain.items()}


class DualHomologyComplex(_ColumnComplex):
    """``D^k = Hom(V (x) Lambda^k g, F)`` with ``d*``, the dual of the homology differential.

    Coordinate ``x * C(dim g, k) + rank(S)``.  For ``V`` the adjoint module its
    cohomology is Lie cohomology with coadjoint coefficients.
    """

    name = "homology"

    def __init__(self, alg: LieAlgebra, V: GModule | None = None, grading: Grading | None = None):
        self.alg = alg
        self.V = V or make_module(alg, "adjoint")
        self.grading = grading or find_gradings(alg, self.V)
        self._cache: dict[int, dict[int, dict[int, Fraction]]] = {}

    def dim(self, k: int) -> int:
        if k < 0 or k > self.alg.dim:
            return 0
        return comb(self.alg.dim, k) * self.V.dim

    def keys(self, k: int) -> np.ndarray:
        basis = _wedge_array(self.alg.dim, k)
        dv = self.V.dim
        idx = np.tile(basis, (dv, 1))
        x = np.repeat(np.arange(dv, dtype=np.int64), len(basis))
        g = self.grading
        # a functional on x (x) S has the key of the arity k+1 cochain on (x, S)
        w = -g.module_weights[x] - g.weights[idx].sum(axis=1)
        p = (g.module_parities[x] + g.parities[idx].sum(axis=1)) % 2
        return np.hstack([w, p])

    def _transpose_of_d(self, k: int) -> dict[int, dict[int, Fraction]]:
        """Columns of ``d*`` in degree ``k``: for each source functional, its image."""
        if k not in self._cache:
            d, dv = self.alg.dim, self.V.dim
            cols: dict[int, dict[int, Fraction]] = {}
            if k + 1 <= d:
                for S in wedge_basis(d, k + 1):
                    for x in range(dv):
                        chain = HomologyChain(k + 1, d, dv, {(S, x): 1})
                        row = chain.coordinate((S, x))
                        for key, v in homology_differential(chain, self.alg, self.V).items():
                            src = ChainFunctional(k, d, dv, {}).coordinate(key)
                            cols.setdefault(src, {})[row] = v
            self._cache[k] = cols
        return self._cache[k]

    def _column(self, k: int, index: int) -> dict[int, Fraction]:
        return dict(self._transpose_of_d(k).get(index, {}))


class ShiftedComplex(GradedComplex):
    """``C'^k = C^{k+shift}`` with differential multiplied by ``sign``."""

    def __init__(self, inner: GradedComplex, shift: int, sign: int = 1):
        self.inner, self.shift, self.sign = inner, shift, sign
        self.grading = inner.grading
        self.name = f"{inner.name}[{shift}]"

    def dim(self, k: int) -> int:
        return self.inner.dim(k + self.shift)

    def keys(self, k: int) -> np.ndarray:
        return self.inner.keys(k + self.shift)

    def differential(self, k: int, columns=None) -> SparseRationalMatrix:
        m = self.inner.differential(k + self.shift, columns)
        return m if self.sign == 1 else -m

    def nnz_estimate(self, k: int, columns: int) -> int:
        return self.inner.nnz_estimate(k + self.shift, columns)


# ---------------------------------------------------------------- chain maps

class ChainMapMatrices:
    """Degreewise matrices of a chain map between two ``GradedComplex`` objects."""

    def __init__(self, source: GradedComplex, target: GradedComplex, name: str = ""):
        self.source, self.target, self.name = source, target, name

    def matrix(self, k: int, columns=None) -> SparseRationalMatrix:  # pragma: no cover
        raise NotImplementedError


class SkewInclusion(ChainMapMatrices):
    """Pullback along ``g^{(x)k} -> Lambda^k g``: ``CE^k(g;V) -> CL^k(g;V)``.

    The basis cochain on ``S`` goes to ``sum_sigma sign(sigma)`` on every
    permutation of ``S``.
    """

    def __init__(self, ce: CEComplex, cl: LeibnizComplex):
        super().__init__(ce, cl, "skew_inclusion")

    def matrix(self, k: int, columns=None) -> SparseRationalMatrix:
        import itertools

        from .indexing import sort_sign, tensor_index
        ce, cl = self.source, self.target
        d, dv = ce.alg.dim, ce.V.dim
        cols = _columns(columns, ce.dim(k))
        entries = []
        basis = wedge_basis(d, k)
        for j, c in enumerate(cols.tolist()):
            S, t = basis[c // dv], c % dv
            for perm in itertools.permutations(S):
                entries.append((tensor_index(perm, d) * dv + t, j, sort_sign(perm)[0]))
        return SparseRationalMatrix.from_entries(cl.dim(k), len(cols), entries)


class ProjectionPullback(ChainMapMatrices):
    """Pullback along ``g (x) Lambda^{k+1} g -> Lambda^{k+2} g`` at the level of degree-``k`` terms.

    Source degree ``k`` is ``Hom(Lambda^{k+1} g, F)`` (a ``ShiftedComplex`` of
    trivial-coefficient cochains), target degree ``k`` is ``D^k``:
    ``(P f)(x (x) S) = f(x ^ S)``.
    """

    def __init__(self, source: ShiftedComplex, target: DualHomologyComplex):
        super().__init__(source, target, "projection_pullback")

    def matrix(self, k: int, columns=None) -> SparseRationalMatrix:
        d = self.target.alg.dim
        cols = _columns(columns, self.source.dim(k))
        basis = wedge_basis(d, k + 1)
        pos = wedge_positions(d, k)
        ck = comb(d, k)
        entries = []
        for j, c in enumerate(cols.tolist()):
            T = basis[c]
            for p, x in enumerate(T):
                S = T[:p] + T[p + 1:]
                entries.append((x * ck + pos[S], j, -1 if p % 2 else 1))
        return SparseRationalMatrix.from_entries(self.target.dim(k), len(cols), entries)


def _wedge_array(d: int, k: int) -> np.ndarray:
    if k < 0 or k > d:
        return np.zeros((0, max(k, 0)), dtype=np.int64)
    basis = wedge_basis(d, k)
    return np.array(basis, dtype=np.int64).reshape(len(basis), k)
