"""Pointwise coboundaries, differentials, actions and products on sparse cochains."""
from __future__ import annotations

import itertools
from bisect import bisect_left
from fractions import Fraction
from typing import Mapping, Sequence

from ..exact_linalg import DimensionMismatch, SparseRationalMatrix, as_fraction, kernel_basis
from ..lie_core import GModule, LieAlgebra, SubalgebraEmbedding
from ..lie_core.modules import dual, exterior_power, make_module, restrict, submodule, tensor
from .cochains import ChainFunctional, HomologyChain, TensorCochain, WedgeCochain
from .indexing import sort_sign, wedge_basis


def _check(f, alg: LieAlgebra, V: GModule) -> None:
    if f.alg_dim != alg.dim or f.module_dim != V.dim:
        raise DimensionMismatch(
            f"cochain on ({f.alg_dim}, {f.module_dim}) used with algebra dim {alg.dim}, module dim {V.dim}")
    if V.algebra.dim != alg.dim:
        raise DimensionMismatch("module is over a different algebra")


def _bracket_preimages(alg: LieAlgebra, ordered: bool) -> dict[int, list[tuple[int, int, Fraction]]]:
    """``m -> [(a, b, c(a,b)_m)]`` over ordered pairs, or pairs ``a < b`` only."""
    out: dict[int, list[tuple[int, int, Fraction]]] = {}
    for a, b, m, c in alg.structure_constants():
        if ordered or a < b:
            out.setdefault(m, []).append((a, b, c))
    return out


def leibniz_coboundary(f: TensorCochain, alg: LieAlgebra, V: GModule) -> TensorCochain:
    """``delta f`` on ``Hom(g^{(x)k}, V)``.

    ``(delta f)(g_1..g_{k+1}) = sum_i (-1)^i g_i . f(..^g_i..)
    + sum_{i<j} (-1)^j f(g_1.., [g_i, g_j], ..^g_j..)`` with the bracket in
    slot ``i``.  Generated by scattering each coefficient of ``f``.
    """
    _check(f, alg, V)
    k = f.arity
    out: dict = {}

    def add(key, value):
        nv = out.get(key, 0) + value
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)

    pre = _bracket_preimages(alg, ordered=True)
    for (tup, t), c in f.items():
        for g in range(alg.dim):
            for s, a in V.columns(g).get(t, ()):
                for p in range(k + 1):
                    add((tup[:p] + (g,) + tup[p:], s), (-1) ** (p + 1) * a * c)
        for i in range(k):
            for a, b, cab in pre.get(tup[i], ()):
                for j in range(i + 1, k + 1):
                    new = tup[:i] + (a,) + tup[i + 1:j] + (b,) + tup[j:]
                    add((new, t), (-1) ** (j + 1) * cab * c)
    return TensorCochain(k + 1, alg.dim, V.dim, out)


def ce_coboundary(f: WedgeCochain, alg: LieAlgebra, V: GModule) -> WedgeCochain:
    """The same formula on alternating cochains (Chevalley-Eilenberg)."""
    _check(f, alg, V)
    k = f.arity
    out: dict = {}

    def add(key, value):
        nv = out.get(key, 0) + value
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)

    pre = _bracket_preimages(alg, ordered=False)
    for (tup, t), c in f.items():
        members = set(tup)
        for g in range(alg.dim):
            if g in members:
                continue
            cols = V.columns(g).get(t, ())
            if not cols:
                continue
            p = bisect_left(tup, g)
            new = tup[:p] + (g,) + tup[p:]
            for s, a in cols:
                add((new, s), (-1) ** (p + 1) * a * c)
        for i, m in enumerate(tup):
            rest = tup[:i] + tup[i + 1:]
            rest_set = set(rest)
            for a, b, cab in pre.get(m, ()):
                if a in rest_set or b in rest_set:
                    continue
                new = tuple(sorted(rest + (a, b)))
                p, q = new.index(a), new.index(b)
                evaluated = new[:p] + (m,) + new[p + 1:q] + new[q + 1:]
                sign = sort_sign(evaluated)[0]
                add((new, t), (-1) ** (q + 1) * cab * sign * c)
    return WedgeCochain(k + 1, alg.dim, V.dim, out)


def _bracket_with_module(V: GModule, g: int, x: int) -> list[tuple[int, Fraction]]:
    """Coordinates of ``[x, g] := -g . x`` for a module basis vector ``x``."""
    return [(s, -a) for s, a in V.columns(g).get(x, ())]


def homology_differential(c: HomologyChain, alg: LieAlgebra, V: GModule | None = None) -> HomologyChain:
    """``d : V (x) Lambda^{k+1} g -> V (x) Lambda^k g``.

    ``d(x (x) g_1..g_{k+1}) = sum_i (-1)^{i+1} [x, g_i] (x) (..^g_i..)
    + sum_{i<j} (-1)^{j+1} x (x) (.., [g_i, g_j], ..^g_j..)`` with
    ``[x, g] = -g . x`` for a general module (the adjoint by default).
    """
    V = V or make_module(alg, "adjoint")
    _check(c, alg, V)
    if c.arity < 1:
        raise DimensionMismatch("d is defined on chains of degree >= 1")
    k1 = c.arity
    out: dict = {}

    def add(key, value):
        nv = out.get(key, 0) + value
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)

    for (tup, x), coef in c.items():
        for i in range(k1):
            rest = tup[:i] + tup[i + 1:]
            for s, a in _bracket_with_module(V, tup[i], x):
                add((rest, s), (-1) ** i * a * coef)  # (-1)^{(i+1)+1}
        for i, j in itertools.combinations(range(k1), 2):
            for m, cm in alg.bracket(tup[i], tup[j]).items():
                new = tup[:i] + (m,) + tup[i + 1:j] + tup[j + 1:]
                sign, key = sort_sign(new)
                if sign:
                    add((key, x), (-1) ** j * cm * sign * coef)  # (-1)^{(j+1)+1}
    return HomologyChain(k1 - 1, alg.dim, V.dim, out)


def d_star(phi: ChainFunctional, alg: LieAlgebra, V: GModule | None = None) -> ChainFunctional:
    """Dual of ``d``: ``(d* phi)(c) = phi(d c)``."""
    V = V or make_module(alg, "adjoint")
    _check(phi, alg, V)
    k1 = phi.arity + 1
    out = {}
    for S in wedge_basis(alg.dim, k1):
        for x in range(V.dim):
            image = homology_differential(HomologyChain(k1, alg.dim, V.dim, {(S, x): 1}), alg, V)
            value = phi.pair(image)
            if value:
                out[(S, x)] = value
    return ChainFunctional(k1, alg.dim, V.dim, out)


def phi_iso(a: WedgeCochain) -> ChainFunctional:
    """``Phi(a)(x (x) g_1..g_k) = (-1)^k a(g_1..g_k)(x)`` for coadjoint-valued ``a``.

    With the dual basis as coadjoint basis this is a signed copy of the
    coefficients.
    """
    if a.module_dim != a.alg_dim:
        raise DimensionMismatch("Phi needs coadjoint (dual-basis) values")
    sign = -1 if a.arity % 2 else 1
    return ChainFunctional(a.arity, a.alg_dim, a.module_dim, {k: sign * v for k, v in a.items()})


def g_action(g: int, f, alg: LieAlgebra, V: GModule, domain: Sequence[int] | None = None):
    """``(g f)(x_1..x_k) = g . f(x_1..x_k) + sum_i f(.., [x_i, g], ..)``.

    With ``domain`` the result is only kept on tuples drawn from those basis
    indices (for cochains whose natural home is ``Hom(X^k, V)`` with ``X``
    an ideal).
    """
    _check(f, alg, V)
    if isinstance(f, WedgeCochain) and not isinstance(f, HomologyChain):
        full = g_action(g, f.to_tensor(), alg, V, domain)
        return WedgeCochain(f.arity, f.alg_dim, f.module_dim,
                            {k: v for k, v in full.items() if list(k[0]) == sorted(set(k[0]))})
    if not isinstance(f, TensorCochain):
        raise TypeError("g_action expects a TensorCochain or WedgeCochain")
    allowed = None if domain is None else set(domain)
    # [x, g] has an m-component: x -> list of (x, c(x,g)_m) keyed by m
    into: dict[int, list[tuple[int, Fraction]]] = {}
    for x in range(alg.dim):
        for m, c in alg.bracket(x, g).items():
            into.setdefault(m, []).append((x, c))
    out: dict = {}

    def add(key, value):
        if allowed is not None and not set(key[0]) <= allowed:
            return
        nv = out.get(key, 0) + value
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)

    cols = V.columns(g)
    for (tup, t), c in f.items():
        for s, a in cols.get(t, ()):
            add((tup, s), a * c)
        for i, m in enumerate(tup):
            for x, cx in into.get(m, ()):
                add((tup[:i] + (x,) + tup[i + 1:], t), cx * c)
    return TensorCochain(f.arity, f.alg_dim, f.module_dim, out)


def wedge_extend(c1: WedgeCochain, c2: WedgeCochain) -> WedgeCochain:
    """Shuffle product of a V-valued and a scalar-valued alternating cochain."""
    if c1.alg_dim != c2.alg_dim:
        raise DimensionMismatch("cochains over different algebras")
    if c2.module_dim != 1:
        raise DimensionMismatch("second factor must take scalar values")
    out: dict = {}
    for (t1, x), a in c1.items():
        for (t2, _), b in c2.items():
            sign, key = sort_sign(t1 + t2)
            if sign:
                out[(key, x)] = out.get((key, x), 0) + sign * a * b
    return WedgeCochain(c1.arity + c2.arity, c1.alg_dim, c1.module_dim, out)


def tensor_product(f: TensorCochain, theta) -> TensorCochain:
    """``(f (x) theta)(g_1..g_{p+q}) = f(g_1..g_p) theta(g_{p+1}..g_{p+q})``; theta scalar."""
    if isinstance(theta, WedgeCochain):
        theta = theta.to_tensor()
    if isinstance(f, WedgeCochain):
        f = f.to_tensor()
    if theta.module_dim != 1 or theta.alg_dim != f.alg_dim:
        raise DimensionMismatch("second factor must be scalar-valued on the same algebra")
    out = {}
    for (t1, x), a in f.items():
        for (t2, _), b in theta.items():
            out[(t1 + t2, x)] = a * b
    return TensorCochain(f.arity + theta.arity, f.alg_dim, f.module_dim, out)


def skew_extend(arity: int, alg_dim: int, module_dim: int,
                values: Mapping[tuple[tuple[int, ...], int], object],
                groups: Sequence[Sequence[int]] = ()) -> TensorCochain:
    """Materialize a cochain given on a generating support.

    ``values`` lists the cochain on representative tuples.  Slots within each
    group of ``groups`` are alternating: every permutation of those slots is
    filled in with its sign.  All other tuples are zero.
    """
    groups = [tuple(g) for g in groups]
    used = [s for g in groups for s in g]
    if len(set(used)) != len(used) or any(not 0 <= s < arity for s in used):
        raise ValueError("skew groups must be disjoint slot sets inside the arity")
    out: dict = {}
    for (tup, t), v in values.items():
        v = as_fraction(v)
        if not v:
            continue
        variants = [(tuple(tup), 1)]
        for group in groups:
            nxt = []
            for base, sgn in variants:
                entries = [base[s] for s in group]
                for perm in itertools.permutations(range(len(group))):
                    permuted = [entries[p] for p in perm]
                    sign = sort_sign(perm)[0]
                    new = list(base)
                    for slot, val in zip(group, permuted):
                        new[slot] = val
                    nxt.append((tuple(new), sgn * sign))
            variants = nxt
        for new, sgn in variants:
            if any(len(set(new[s] for s in g)) < len(g) for g in groups):
                continue
            key = (new, t)
            nv = out.get(key, 0) + sgn * v
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return TensorCochain(arity, alg_dim, module_dim, out)


# ---------------------------------------------------------------- invariants

def cochain_module(alg: LieAlgebra, k: int, V: GModule, domain: Sequence[int] | None = None,
                   acting: SubalgebraEmbedding | None = None, alternating: bool = True) -> GModule:
    """``Hom(Lambda^k X, V)`` (or ``X^{(x)k}``) as a module, ``X`` spanned by ``domain``.

    The action is the cochain action ``(g f)(x) = g f(x) + sum f(.., [x_i, g], ..)``,
    realized as ``(Lambda^k X)* (x) V``.  ``X`` must be stable under the acting
    algebra.  Basis index ``a * dim V + t`` with ``a`` the tuple's position
    among increasing (or all) tuples of ``domain`` in local numbering.
    """
    adj = make_module(alg, "adjoint")
    coeff = V
    if acting is not None:
        adj = restrict(adj, acting)
        coeff = restrict(V, acting)
    X = submodule(adj, list(domain)) if domain is not None else adj
    if alternating:
        power = exterior_power(X, k)
    else:
        power = _tensor_power(X, k)
    return tensor(dual(power), coeff)


def _tensor_power(X: GModule, k: int) -> GModule:
    from ..lie_core.modules import trivial_module
    out = trivial_module(X.algebra, 1)
    for _ in range(k):
        out = tensor(out, X)
    return out


def invariant_subspace(module: GModule, sub: SubalgebraEmbedding | Sequence[int] | None = None,
                       mode: str = "auto") -> list[list[Fraction]]:
    """Basis of ``{v : g v = 0 for every generator g of sub}``."""
    if sub is None:
        gens = range(module.algebra.dim)
    elif isinstance(sub, SubalgebraEmbedding):
        gens = sub.member_indices
    else:
        gens = sub
    blocks = [module.action_matrix(g) for g in gens]
    if not blocks:
        return kernel_basis(SparseRationalMatrix.zeros(0, module.dim), mode)
    return kernel_basis(SparseRationalMatrix.vstack(blocks), mode)


def module_action_on_vector(module: GModule, g: int, vec: Mapping[int, object]) -> dict[int, Fraction]:
    return module.act(g, vec)
