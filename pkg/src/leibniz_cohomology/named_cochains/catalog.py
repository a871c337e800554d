"""The named cochains attached to h_n = so(n) + J_n.

Every entry is stored twice: by its defining values on a *generating
support* (each slot restricted to J_n or left free over h_n, alternating
slot groups listed once in increasing order), and as a full tensor cochain
on h_n obtained by alternating over those groups and extending by zero.
Indices are always global h_n basis indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from ..cochain_complexes import TensorCochain, WedgeCochain, skew_extend
from ..lie_core import (
    GModule,
    InvalidDimension,
    LieAlgebra,
    build_h_n,
    make_module,
    rotation_label,
    rotation_pairs,
    translation_label,
)

Key = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class NamedCochain:
    """One named element.

    ``slots`` gives the domain of each argument (``"J"``, ``"so"`` or ``"h"``),
    ``groups`` the alternating slot groups, ``coefficients`` is ``"adjoint"``
    or ``"trivial"``.
    """
    name: str
    arity: int
    coefficients: str
    slots: tuple[str, ...]
    groups: tuple[tuple[int, ...], ...]
    generating: dict[Key, Fraction]
    extended: TensorCochain
    note: str = ""

    @property
    def module_dim(self) -> int:
        return self.extended.module_dim

    def value(self, tup) -> dict[int, Fraction]:
        """Value of the full extension on a basis tuple."""
        return self.extended.value(tuple(tup))

    def restricted(self, domains: dict[str, set[int]]) -> dict[Key, Fraction]:
        """The full extension restricted to tuples matching ``slots``."""
        allowed = [domains[s] for s in self.slots]
        return {k: v for k, v in self.extended.items()
                if all(x in dom for x, dom in zip(k[0], allowed))}

    def wedge(self) -> WedgeCochain:
        """The entry as an alternating cochain; only for fully alternating entries."""
        if self.arity > 1 and self.groups != (tuple(range(self.arity)),):
            raise ValueError(f"{self.name} is not alternating in all slots")
        return WedgeCochain(self.arity, self.extended.alg_dim, self.module_dim,
                            {k: v for k, v in self.extended.items() if list(k[0]) == sorted(set(k[0]))})


@dataclass
class NamedCochainCatalog:
    n: int
    algebra: LieAlgebra
    entries: dict[str, NamedCochain] = field(default_factory=dict)
    variants: dict[str, list[str]] = field(default_factory=dict)

    def __getitem__(self, name: str) -> NamedCochain:
        return self.entries[name]

    def __iter__(self) -> Iterator[NamedCochain]:
        return iter(self.entries.values())

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    @property
    def names(self) -> list[str]:
        return list(self.entries)

    def alpha(self, i: int, j: int) -> int:
        return self.algebra.index(rotation_label(i, j))

    def d(self, i: int) -> int:
        return self.algebra.index(translation_label(i))

    def domains(self) -> dict[str, set[int]]:
        rot = {self.alpha(i, j) for i, j in rotation_pairs(self.n)}
        trans = {self.d(i) for i in range(1, self.n + 1)}
        return {"so": rot, "J": trans, "h": set(range(self.algebra.dim))}

    def module(self, entry: NamedCochain) -> GModule:
        return make_module(self.algebra, entry.coefficients)

    def check_generating(self) -> list[str]:
        """Names whose full extension does not reproduce the generating values."""
        doms = self.domains()
        bad = []
        for e in self:
            rest = e.restricted(doms)
            for (tup, t), v in e.generating.items():
                if rest.get((tup, t), 0) != v:
                    bad.append(e.name)
                    break
        return bad

    def to_json(self) -> dict:
        labels = self.algebra.labels
        out = {}
        for e in self:
            out[e.name] = {
                "arity": e.arity, "coefficients": e.coefficients, "slots": list(e.slots),
                "alternating_groups": [list(g) for g in e.groups], "note": e.note,
                "generating": [{"tuple": [labels[x] for x in tup],
                                "target": labels[t] if e.coefficients == "adjoint" else "1",
                                "value": str(v)}
                               for (tup, t), v in sorted(e.generating.items())],
            }
        return {"n": self.n, "algebra": self.algebra.name, "entries": out,
                "variants": {k: list(v) for k, v in self.variants.items()}}


def _entry(name, arity, coefficients, slots, groups, values, dim, note="") -> NamedCochain:
    mdim = dim if coefficients == "adjoint" else 1
    gen = {}
    for (tup, t), v in values.items():
        v = Fraction(v)
        if v:
            gen[(tuple(tup), t)] = v
    ext = skew_extend(arity, dim, mdim, gen, groups)
    return NamedCochain(name, arity, coefficients, tuple(slots), tuple(tuple(g) for g in groups),
                        gen, ext, note)


def build_catalog(n: int) -> NamedCochainCatalog:
    """All named cochains for ``h_n``, ``n >= 3``."""
    if not isinstance(n, int) or n < 3:
        raise InvalidDimension(f"named cochains need an integer n >= 3, got {n!r}")
    h = build_h_n(n)
    cat = NamedCochainCatalog(n, h)
    dim = h.dim
    a, d = cat.alpha, cat.d
    idx = range(1, n + 1)
    pairs = rotation_pairs(n)

    def without(*skip):
        return tuple(d(k) for k in idx if k not in skip)

    def add(entry: NamedCochain):
        cat.entries[entry.name] = entry

    add(_entry("I", 1, "adjoint", ["J"], [], {((d(i),), d(i)): 1 for i in idx}, dim,
               "identity on J_n, zero on so(n)"))
    add(_entry("rho", 2, "adjoint", ["J", "J"], [(0, 1)],
               {((d(i), d(j)), a(i, j)): 1 for i, j in pairs}, dim,
               "zero when either argument lies in so(n)"))
    add(_entry("Gamma", n - 2, "adjoint", ["J"] * (n - 2), [tuple(range(n - 2))],
               {(without(i, j), a(i, j)): (-1) ** (i + j - 1) for i, j in pairs}, dim))
    add(_entry("mu", n - 1, "adjoint", ["J"] * (n - 1), [tuple(range(n - 1))],
               {(without(j), d(j)): (-1) ** (j - 1) for j in idx}, dim))

    # scalar-valued elements on h (x) J^k: first slot pairs with h, the rest with J
    add(_entry("g*", 2, "trivial", ["h", "J"], [], {((d(i), d(i)), 0): 1 for i in idx}, dim))
    add(_entry("s*", 3, "trivial", ["h", "J", "J"], [(1, 2)],
               {((a(i, j), d(i), d(j)), 0): 1 for i, j in pairs}, dim))
    tail = [tuple(range(1, n))]
    add(_entry("w*", n, "trivial", ["h"] + ["J"] * (n - 1), tail,
               {((d(i),) + without(i), 0): (-1) ** (i - 1) for i in idx}, dim,
               "signs (-1)^(i-1), matching w_n"))
    add(_entry("w*_uniform", n, "trivial", ["h"] + ["J"] * (n - 1), tail,
               {((d(i),) + without(i), 0): (-1) ** (n - 1) for i in idx}, dim,
               "one overall sign (-1)^(n-1) on every term"))
    tail = [tuple(range(1, n - 1))] if n > 3 else []
    add(_entry("gamma*", n - 1, "trivial", ["h"] + ["J"] * (n - 2), tail,
               {((a(i, j),) + without(i, j), 0): (-1) ** (i + j - 1) for i, j in pairs}, dim,
               "signs (-1)^(i+j-1)"))
    add(_entry("gamma*_unsigned", n - 1, "trivial", ["h"] + ["J"] * (n - 2), tail,
               {((a(i, j),) + without(i, j), 0): 1 for i, j in pairs}, dim,
               "all signs +1"))
    add(_entry("v*", n, "trivial", ["J"] * n, [tuple(range(n))], {(without(), 0): 1}, dim,
               "volume form dx^1 ^ ... ^ dx^n"))

    # invariant 3-cocycle of so(n): (x, y, z) -> <[x, y], z> in the orthonormal alpha basis
    rot = [a(i, j) for i, j in pairs]
    x3 = {}
    for p_pos, p in enumerate(rot):
        for q in rot[p_pos + 1:]:
            for r, c in h.bracket(p, q).items():
                if r > q:
                    x3[((p, q, r), 0)] = c
    add(_entry("x_3", 3, "trivial", ["so"] * 3, [(0, 1, 2)], x3, dim,
               "Cartan 3-cocycle of so(n), zero when an argument lies in J_n"))

    cat.variants = {"w*": ["w*", "w*_uniform"], "gamma*": ["gamma*", "gamma*_unsigned"]}
    bad = cat.check_generating()
    if bad:  # pragma: no cover - construction bug guard
        raise ArithmeticError(f"extensions disagree with generating values: {bad}")
    return cat
