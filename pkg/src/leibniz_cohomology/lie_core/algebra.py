"""Lie algebras given by rational structure constants."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..exact_linalg import SparseRationalMatrix, as_fraction
from .errors import AntisymmetryViolation, InvalidDimension, JacobiViolation, NotClosed

Vector = dict[int, Fraction]


def _clean(vec: Mapping[int, object]) -> Vector:
    out = {}
    for k, v in vec.items():
        f = as_fraction(v)
        if f:
            out[int(k)] = f
    return out


def add_into(target: Vector, vec: Mapping[int, Fraction], scale=1) -> None:
    for k, v in vec.items():
        nv = target.get(k, 0) + scale * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class LieAlgebra:
    """A finite-dimensional Lie algebra over Q.

    ``brackets`` maps index pairs to sparse coordinate vectors.  Pairs with
    ``i < j`` are enough; the opposite order is filled in by antisymmetry and
    checked when both are supplied.  Antisymmetry and the Jacobi identity are
    verified on construction.
    """

    __slots__ = ("name", "labels", "dim", "_table", "subalgebras")

    def __init__(self, labels: Sequence[str], brackets: Mapping[tuple[int, int], Mapping[int, object]],
                 name: str = "", subalgebras: Mapping[str, Sequence[int]] | None = None,
                 *, validate: bool = True):
        self.labels = tuple(str(x) for x in labels)
        self.dim = len(self.labels)
        self.name = name
        if len(set(self.labels)) != self.dim:
            raise ValueError("basis labels must be distinct")
        table: dict[tuple[int, int], Vector] = {}
        for (i, j), vec in brackets.items():
            i, j = int(i), int(j)
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise IndexError(f"bracket index ({i}, {j}) out of range")
            vec = _clean(vec)
            if any(not 0 <= k < self.dim for k in vec):
                raise IndexError(f"coefficient index out of range in [{i}, {j}]")
            if i == j:
                if vec:
                    raise AntisymmetryViolation(i, j, "[x, x] must vanish")
                continue
            if not vec:
                continue
            neg = {k: -v for k, v in vec.items()}
            for key, val in (((i, j), vec), ((j, i), neg)):
                if key in table and table[key] != val:
                    raise AntisymmetryViolation(*key)
                table[key] = val
        for (i, j) in list(table):
            if (j, i) not in table:  # pragma: no cover - filled above
                raise AntisymmetryViolation(i, j)
        self._table = table
        self.subalgebras: dict[str, tuple[int, ...]] = {
            k: tuple(int(x) for x in v) for k, v in (subalgebras or {}).items()
        }
        if validate:
            self.check_jacobi()
            for key in self.subalgebras:
                self.subalgebra(key)

    # -- structure -----------------------------------------------------------
    def bracket(self, i: int, j: int) -> Vector:
        """Coordinates of ``[b_i, b_j]`` (a fresh dict)."""
        return dict(self._table.get((i, j), {}))

    def structure_constants(self) -> Iterable[tuple[int, int, int, Fraction]]:
        """All nonzero ``c(i,j)_k`` over ordered pairs, sorted."""
        for (i, j) in sorted(self._table):
            for k, v in sorted(self._table[(i, j)].items()):
                yield i, j, k, v

    def bracket_vectors(self, x: Mapping[int, object], y: Mapping[int, object]) -> Vector:
        """Bilinear extension of the bracket to sparse coordinate vectors."""
        out: Vector = {}
        for i, a in _clean(x).items():
            for j, b in _clean(y).items():
                vec = self._table.get((i, j))
                if vec:
                    add_into(out, vec, a * b)
        return out

    def ad_matrix(self, i: int) -> SparseRationalMatrix:
        """Matrix of ``ad_{b_i}``; column j holds ``[b_i, b_j]``."""
        entries = [(k, j, v) for j in range(self.dim) for k, v in self._table.get((i, j), {}).items()]
        return SparseRationalMatrix.from_entries(self.dim, self.dim, entries)

    def is_abelian(self) -> bool:
        return not self._table

    def check_jacobi(self) -> None:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            total: Vector = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                ab = self._table.get((a, b))
                if ab:
                    add_into(total, self.bracket_vectors(ab, {c: 1}))
            if total:
                raise JacobiViolation((i, j, k), (self.labels[i], self.labels[j], self.labels[k]))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    # -- comparison ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.labels == other.labels and self._table == other._table

    __hash__ = None

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or 'unnamed'}, dim={self.dim})"

    # -- substructures -------------------------------------------------------
    def subalgebra(self, key_or_indices) -> "SubalgebraEmbedding":
        if isinstance(key_or_indices, str):
            return SubalgebraEmbedding(self, self.subalgebras[key_or_indices], key_or_indices)
        return SubalgebraEmbedding(self, key_or_indices)


class SubalgebraEmbedding:
    """Span of a subset of basis vectors, checked to be closed under the bracket."""

    __slots__ = ("parent", "member_indices", "name", "_members")

    def __init__(self, parent: LieAlgebra, member_indices: Sequence[int], name: str = ""):
        self.parent = parent
        self.member_indices = tuple(int(x) for x in member_indices)
        self.name = name
        self._members = set(self.member_indices)
        if len(self._members) != len(self.member_indices):
            raise ValueError("member indices must be distinct")
        for i in self.member_indices:
            if not 0 <= i < parent.dim:
                raise InvalidDimension(f"index {i} outside algebra of dim {parent.dim}")
        for i in self.member_indices:
            for j in self.member_indices:
                if not set(parent.bracket(i, j)) <= self._members:
                    raise NotClosed(f"[{parent.labels[i]}, {parent.labels[j]}] leaves the span")

    @property
    def dim(self) -> int:
        return len(self.member_indices)

    def is_ideal(self) -> bool:
        return all(set(self.parent.bracket(g, j)) <= self._members
                   for g in range(self.parent.dim) for j in self.member_indices)

    def as_algebra(self) -> LieAlgebra:
        local = {g: a for a, g in enumerate(self.member_indices)}
        brackets = {}
        for a, i in enumerate(self.member_indices):
            for b, j in enumerate(self.member_indices):
                if a < b:
                    vec = self.parent.bracket(i, j)
                    if vec:
                        brackets[(a, b)] = {local[k]: v for k, v in vec.items()}
        return LieAlgebra([self.parent.labels[i] for i in self.member_indices], brackets,
                          name=self.name or f"sub({self.parent.name})")

    def complement(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.parent.dim) if i not in self._members)


def quotient_algebra(ideal: SubalgebraEmbedding, name: str = "") -> LieAlgebra:
    """``parent / ideal`` on the complementary basis vectors."""
    if not ideal.is_ideal():
        raise NotClosed("quotient requires an ideal")
    parent = ideal.parent
    rest = ideal.complement()
    local = {g: a for a, g in enumerate(rest)}
    brackets = {}
    for a, i in enumerate(rest):
        for b, j in enumerate(rest):
            if a < b:
                vec = {local[k]: v for k, v in parent.bracket(i, j).items() if k in local}
                if vec:
                    brackets[(a, b)] = vec
    return LieAlgebra([parent.labels[i] for i in rest], brackets,
                      name=name or f"{parent.name}/{ideal.name or 'ideal'}")
