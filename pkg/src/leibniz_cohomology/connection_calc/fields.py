"""Rational functions on R^n and vector fields with rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy
from sympy import QQ
from sympy.polys.fields import FracElement, field

from ..exact_linalg import DimensionMismatch

RationalFunction = FracElement


@lru_cache(maxsize=None)
def _field(names: tuple[str, ...]):
    K, *gens = field(",".join(names), QQ)
    return K, tuple(gens)


class Space:
    """Coordinates ``x1..xn`` (``x`` when ``n == 1``) and their rational function field."""

    def __init__(self, n: int, names: Sequence[str] | None = None):
        if n < 1:
            raise ValueError("ambient dimension must be positive")
        if names is None:
            names = ("x",) if n == 1 else tuple(f"x{i}" for i in range(1, n + 1))
        if len(names) != n:
            raise ValueError("one name per coordinate")
        self.n = n
        self.names = tuple(names)
        self.field, self.coordinates = _field(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Space) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Space({self.n})"

    def function(self, value) -> RationalFunction:
        """Coerce ints, Fractions, strings and sympy expressions into the field."""
        if isinstance(value, FracElement) and value.field == self.field:
            return value
        if isinstance(value, Fraction):
            return self.field(value.numerator) / value.denominator
        if isinstance(value, int):
            return self.field(value)
        if isinstance(value, str):
            value = sympy.sympify(value, locals={n: sympy.Symbol(n) for n in self.names})
        return self.field.from_expr(sympy.sympify(value))

    def zero(self) -> RationalFunction:
        return self.field.zero

    def diff(self, f: RationalFunction, i: int) -> RationalFunction:
        return f.diff(self.coordinates[i])

    def vector_field(self, components) -> "VectorField":
        return VectorField(self, components)

    def partial(self, i: int) -> "VectorField":
        """The coordinate field d/dx^(i+1)."""
        return VectorField(self, [1 if k == i else 0 for k in range(self.n)])

    def constant_field(self, coefficients) -> "VectorField":
        return VectorField(self, list(coefficients))


class VectorField:
    """``sum_i f_i d/dx^i`` with rational function coefficients."""

    __slots__ = ("space", "components")

    def __init__(self, space: Space, components):
        comps = tuple(space.function(c) for c in components)
        if len(comps) != space.n:
            raise DimensionMismatch(f"{len(comps)} components for a {space.n}-dimensional space")
        self.space = space
        self.components = comps

    def _same(self, other: "VectorField") -> None:
        if not isinstance(other, VectorField) or other.space != self.space:
            raise DimensionMismatch("vector fields live on different spaces")

    def __add__(self, other: "VectorField") -> "VectorField":
        self._same(other)
        return VectorField(self.space, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        self._same(other)
        return VectorField(self.space, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "VectorField":
        return VectorField(self.space, [-a for a in self.components])

    def scale(self, f) -> "VectorField":
        f = self.space.function(f)
        return VectorField(self.space, [f * a for a in self.components])

    __rmul__ = scale

    def __call__(self, f) -> RationalFunction:
        """Directional derivative ``X(f) = sum X^i df/dx^i``."""
        f = self.space.function(f)
        out = self.space.zero()
        for i, a in enumerate(self.components):
            if a:
                out += a * self.space.diff(f, i)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorField) and other.space == self.space \
            and other.components == self.components

    def __hash__(self) -> int:
        return hash((self.space, self.components))

    def is_zero(self) -> bool:
        return not any(self.components)

    def __getitem__(self, i: int) -> RationalFunction:
        return self.components[i]

    def strings(self) -> list[str]:
        return [str(c.as_expr()) for c in self.components]

    def __repr__(self) -> str:
        terms = [f"({s})*d/d{n}" for s, n in zip(self.strings(), self.space.names) if s != "0"]
        return " + ".join(terms) if terms else "0"


def vf_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """``[X, Y]^k = X(Y^k) - Y(X^k)``."""
    X._same(Y)
    return VectorField(X.space, [X(b) - Y(a) for a, b in zip(X.components, Y.components)])


# ---------------------------------------------------------------- h_n as vector fields

def rotation_field(space: Space, i: int, j: int) -> VectorField:
    """``x_i d_j - x_j d_i`` (1-based indices)."""
    x = space.coordinates
    comps = [space.zero()] * space.n
    comps[j - 1] = comps[j - 1] + x[i - 1]
    comps[i - 1] = comps[i - 1] - x[j - 1]
    return VectorField(space, comps)


def h_n_fields(n: int) -> list[VectorField]:
    """Rotation fields (lexicographic) then translations, the basis order of ``build_h_n``."""
    space = Space(n)
    out = [rotation_field(space, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out += [space.partial(i) for i in range(n)]
    return out


def decompose_affine(X: VectorField) -> dict[int, Fraction] | None:
    """Coordinates of ``X`` in the ``h_n`` basis, or ``None`` if ``X`` is not in the span."""
    space = X.space
    n = space.n
    origin = {sympy.Symbol(name): 0 for name in space.names}

    def at_origin(f) -> Fraction:
        return Fraction(str(f.as_expr().subs(origin)))

    out: dict[int, Fraction] = {}
    pos = 0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            c = at_origin(space.diff(X[j - 1], i - 1))
            if c:
                out[pos] = c
            pos += 1
    for k in range(n):
        c = at_origin(X[k])
        if c:
            out[pos + k] = c
    fields = h_n_fields(n)
    rebuilt = VectorField(space, [0] * n)
    for idx, c in out.items():
        rebuilt = rebuilt + VectorField(space, fields[idx].components).scale(c)
    return out if rebuilt == X else None


def bracket_table_mismatches(alg, n: int) -> list[tuple[int, int]]:
    """Basis pairs where ``alg``'s bracket differs from the vector-field bracket."""
    fields = h_n_fields(n)
    bad = []
    for a in range(len(fields)):
        for b in range(len(fields)):
            coords = decompose_affine(vf_bracket(fields[a], fields[b]))
            table = {k: Fraction(v) for k, v in alg.bracket(a, b).items() if v}
            if coords != table:
                bad.append((a, b))
    return bad
