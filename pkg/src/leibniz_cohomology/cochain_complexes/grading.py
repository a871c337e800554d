"""Gradings compatible with the bracket and the module action.

A weight vector ``w`` on the algebra basis (and ``w_V`` on the module basis)
is a grading when every nonzero structure constant ``c(i,j)_k`` has
``w_k = w_i + w_j`` and every nonzero action entry ``A_i[s,t]`` has
``w_V[s] = w_i + w_V[t]``.  Integer gradings are found over Q and parity
gradings over GF(2).  A cochain basis element ``(I, t)`` then has key
``w_V[t] - sum w[I]``, and every coboundary, differential and chain map in
this package preserves it, so all matrices split into independent blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np
import sympy

from ..lie_core import GModule, LieAlgebra


def _constraints(alg: LieAlgebra, V: GModule | None) -> list[tuple[int, ...]]:
    """Rows ``(target, a, b)``: ``w[target] = w[a] + w[b]`` over the joint variable list."""
    d = alg.dim
    rows = set()
    for i, j, k, c in alg.structure_constants():
        if c and i < j:
            rows.add((k, i, j))
    if V is not None:
        for i in range(d):
            for (s, t), v in V.action(i).items():
                if v:
                    rows.add((d + s, i, d + t))
    return sorted(rows)


def _integer_nullspace(rows, nvars: int, pinned: list[int]) -> np.ndarray:
    eqs = []
    for target, a, b in rows:
        e = [0] * nvars
        e[target] += 1
        e[a] -= 1
        e[b] -= 1
        if any(e):
            eqs.append(e)
    for p in pinned:
        e = [0] * nvars
        e[p] = 1
        eqs.append(e)
    if not eqs:
        return np.eye(nvars, dtype=np.int64)
    basis = sympy.Matrix(eqs).nullspace()
    out = []
    for vec in basis:
        scale = lcm(*[sympy.fraction(x)[1] for x in vec])
        out.append([int(x * scale) for x in vec])
    if not out:
        return np.zeros((nvars, 0), dtype=np.int64)
    return np.array(out, dtype=np.int64).T


def _gf2_nullspace(rows, nvars: int, pinned: list[int]) -> np.ndarray:
    """Null space over GF(2), rows as bitmasks."""
    eqs = []
    for target, a, b in rows:
        mask = (1 << target) ^ (1 << a) ^ (1 << b)
        if mask:
            eqs.append(mask)
    eqs.extend(1 << p for p in pinned)
    pivots: dict[int, int] = {}
    for e in eqs:
        for col, prow in pivots.items():
            if e >> col & 1:
                e ^= prow
        if not e:
            continue
        col = (e & -e).bit_length() - 1
        for c2 in list(pivots):
            if pivots[c2] >> col & 1:
                pivots[c2] ^= e
        pivots[col] = e
    basis = []
    for free in range(nvars):
        if free in pivots:
            continue
        vec = [0] * nvars
        vec[free] = 1
        for col, prow in pivots.items():
            if prow >> free & 1:
                vec[col] = 1
        basis.append(vec)
    if not basis:
        return np.zeros((nvars, 0), dtype=np.int64)
    return np.array(basis, dtype=np.int64).T


@dataclass(frozen=True)
class Grading:
    """Integer weights ``(dim, r)`` and parities ``(dim, q)`` for algebra and module."""
    weights: np.ndarray
    module_weights: np.ndarray
    parities: np.ndarray
    module_parities: np.ndarray

    @property
    def width(self) -> int:
        return self.weights.shape[1] + self.parities.shape[1]

    def keys(self, indices: np.ndarray, targets: np.ndarray | None = None) -> np.ndarray:
        """Keys of basis elements given as an ``(N, k)`` index array and ``N`` targets."""
        indices = np.asarray(indices, dtype=np.int64)
        n = indices.shape[0]
        w = np.zeros((n, self.weights.shape[1]), dtype=np.int64)
        p = np.zeros((n, self.parities.shape[1]), dtype=np.int64)
        for col in range(indices.shape[1] if indices.ndim == 2 else 0):
            w -= self.weights[indices[:, col]]
            p += self.parities[indices[:, col]]
        if targets is not None:
            targets = np.asarray(targets, dtype=np.int64)
            w += self.module_weights[targets]
            p += self.module_parities[targets]
        return np.hstack([w, p % 2])


def find_gradings(alg: LieAlgebra, V: GModule | None = None) -> Grading:
    """All integer and parity gradings of ``alg`` jointly with ``V``.

    A module with zero action gets weight 0 so that trivial coefficients and
    the coefficient-free functionals of the homology-side complex share keys.
    """
    d = alg.dim
    dv = V.dim if V is not None else 0
    nvars = d + dv
    pinned = [d + t for t in range(dv)] if V is not None and V.is_trivial_action() else []
    rows = _constraints(alg, V)
    z = _integer_nullspace(rows, nvars, pinned)
    f2 = _gf2_nullspace(rows, nvars, pinned)
    if V is None:
        return Grading(z[:d], np.zeros((1, z.shape[1]), dtype=np.int64),
                       f2[:d], np.zeros((1, f2.shape[1]), dtype=np.int64))
    return Grading(z[:d], z[d:], f2[:d], f2[d:])


def group_by_key(keys: np.ndarray) -> dict[tuple[int, ...], np.ndarray]:
    """Indices grouped by key row, in sorted key order."""
    keys = np.asarray(keys)
    if keys.shape[0] == 0:
        return {}
    if keys.shape[1] == 0:
        return {(): np.arange(keys.shape[0], dtype=np.int64)}
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(len(uniq) + 1))
    return {tuple(int(x) for x in uniq[g]): order[bounds[g]:bounds[g + 1]]
            for g in range(len(uniq))}


def adjoint_grading(alg: LieAlgebra) -> Grading:
    """Algebra gradings with the adjoint module weighted like the algebra."""
    g = find_gradings(alg)
    return Grading(g.weights, g.weights, g.parities, g.parities)


def trivial_grading(alg: LieAlgebra) -> Grading:
    """Algebra gradings with a weight-0 trivial module, comparable with ``adjoint_grading``."""
    g = find_gradings(alg)
    return Grading(g.weights, np.zeros((1, g.weights.shape[1]), dtype=np.int64),
                   g.parities, np.zeros((1, g.parities.shape[1]), dtype=np.int64))
