"""Constructors for so(n), J_n, h_n and sl_2."""
from __future__ import annotations

import itertools

from .algebra import LieAlgebra, SubalgebraEmbedding, Vector, add_into
from .errors import InvalidDimension


def rotation_label(i: int, j: int) -> str:
    """Label of the rotation field x_i d_j - x_j d_i (1-based, i < j)."""
    return f"a_{i}_{j}"


def translation_label(i: int) -> str:
    return f"d_{i}"


def rotation_pairs(n: int) -> list[tuple[int, int]]:
    """1-based pairs (i, j), i < j, in lexicographic order."""
    return list(itertools.combinations(range(1, n + 1), 2))


def _check_n(n: int, minimum: int = 2) -> None:
    if not isinstance(n, int) or n < minimum:
        raise InvalidDimension(f"n must be an integer >= {minimum}, got {n!r}")


def _rotation_index(n: int) -> dict[tuple[int, int], int]:
    return {pair: idx for idx, pair in enumerate(rotation_pairs(n))}


def _alpha(index: dict[tuple[int, int], int], i: int, j: int) -> Vector:
    """Coordinates of alpha_ij, using alpha_ji = -alpha_ij."""
    if i < j:
        return {index[(i, j)]: 1}
    if i > j:
        return {index[(j, i)]: -1}
    return {}


def _so_brackets(n: int) -> dict[tuple[int, int], Vector]:
    index = _rotation_index(n)
    out = {}
    for (a, (i, j)), (b, (k, l)) in itertools.combinations(enumerate(rotation_pairs(n)), 2):
        vec: Vector = {}
        if j == k:
            add_into(vec, _alpha(index, i, l))
        if i == l:
            add_into(vec, _alpha(index, j, k))
        if i == k:
            add_into(vec, _alpha(index, j, l), -1)
        if j == l:
            add_into(vec, _alpha(index, i, k), -1)
        if vec:
            out[(a, b)] = vec
    return out


def build_so_n(n: int) -> LieAlgebra:
    """so(n) on the basis alpha_ij (i < j, lexicographic)."""
    _check_n(n)
    labels = [rotation_label(i, j) for i, j in rotation_pairs(n)]
    return LieAlgebra(labels, _so_brackets(n), name=f"so_{n}")


def build_j_n(n: int) -> LieAlgebra:
    """The abelian algebra of translations d_1..d_n."""
    _check_n(n, 1)
    return LieAlgebra([translation_label(i) for i in range(1, n + 1)], {}, name=f"J_{n}")


def build_h_n(n: int) -> LieAlgebra:
    """Affine orthogonal algebra: so(n) followed by the translations J_n.

    ``[alpha_ij, d_k] = -delta_ik d_j + delta_jk d_i``.  Subalgebras ``"so"``
    and ``"J"`` are registered; J is an abelian ideal.
    """
    _check_n(n)
    pairs = rotation_pairs(n)
    m = len(pairs)
    labels = [rotation_label(i, j) for i, j in pairs] + [translation_label(i) for i in range(1, n + 1)]
    brackets = _so_brackets(n)
    for a, (i, j) in enumerate(pairs):
        for k in range(1, n + 1):
            vec: Vector = {}
            if i == k:
                add_into(vec, {m + j - 1: 1}, -1)
            if j == k:
                add_into(vec, {m + i - 1: 1})
            if vec:
                brackets[(a, m + k - 1)] = vec
    return LieAlgebra(labels, brackets, name=f"h_{n}",
                      subalgebras={"so": range(m), "J": range(m, m + n)})


def build_sl_2() -> LieAlgebra:
    """sl_2 on (e, f, h): [h, e] = 2e, [h, f] = -2f, [e, f] = h."""
    return LieAlgebra(["e", "f", "h"], {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}}, name="sl_2")


def so_part(alg: LieAlgebra) -> SubalgebraEmbedding:
    return alg.subalgebra("so")


def j_part(alg: LieAlgebra) -> SubalgebraEmbedding:
    return alg.subalgebra("J")


def builtin_algebra(name: str, n: int | None = None) -> LieAlgebra:
    """Look up a builtin by name: ``h_n``, ``so_n``, ``j_n`` or ``sl_2``."""
    key = name.lower()
    if key == "sl_2":
        return build_sl_2()
    if n is None:
        raise InvalidDimension(f"algebra {name!r} needs n")
    builders = {"h_n": build_h_n, "so_n": build_so_n, "j_n": build_j_n}
    if key not in builders:
        raise KeyError(f"unknown builtin algebra {name!r}")
    return builders[key](n)
