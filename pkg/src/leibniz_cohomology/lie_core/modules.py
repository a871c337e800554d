"""Representations given by one rational action matrix per basis element."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping, Sequence

from ..exact_linalg import SparseRationalMatrix, as_fraction
from .algebra import LieAlgebra, SubalgebraEmbedding, Vector, add_into
from .errors import ModuleAxiomViolation, NotClosed

KINDS = ("adjoint", "coadjoint", "trivial", "custom")

# sparse matrix: {(row, col): value}
Action = dict[tuple[int, int], Fraction]


class GModule:
    """A left module: ``b_i . v = A_i v``.

    ``actions[i]`` is a sparse ``{(row, col): value}`` map.  The module axiom
    ``A_i A_j - A_j A_i = sum_k c(i,j)_k A_k`` is checked on construction.
    """

    __slots__ = ("algebra", "dim", "kind", "labels", "_actions", "_by_col")

    def __init__(self, algebra: LieAlgebra, dim: int, actions: Sequence[Mapping[tuple[int, int], object]],
                 kind: str = "custom", labels: Sequence[str] | None = None, *, validate: bool = True):
        if kind not in KINDS:
            raise ValueError(f"unknown module kind {kind!r}")
        if len(actions) != algebra.dim:
            raise ValueError("need one action matrix per algebra basis element")
        self.algebra = algebra
        self.dim = int(dim)
        self.kind = kind
        self.labels = tuple(labels) if labels is not None else tuple(f"v{t}" for t in range(self.dim))
        acts = []
        for a in actions:
            clean = {}
            for (s, t), v in a.items():
                f = as_fraction(v)
                if not (0 <= s < self.dim and 0 <= t < self.dim):
                    raise IndexError("action entry out of range")
                if f:
                    clean[(int(s), int(t))] = f
            acts.append(clean)
        self._actions = tuple(acts)
        self._by_col = None
        if kind == "trivial" and any(self._actions):
            raise ValueError("trivial module must have zero action")
        if validate:
            self.check_axiom()

    # -- access --------------------------------------------------------------
    def action(self, i: int) -> Action:
        return dict(self._actions[i])

    def action_entries(self, i: int) -> list[tuple[int, int, Fraction]]:
        """Nonzero ``(row, col, value)`` of ``A_i``, sorted."""
        return sorted((s, t, v) for (s, t), v in self._actions[i].items())

    def action_matrix(self, i: int) -> SparseRationalMatrix:
        return SparseRationalMatrix.from_entries(self.dim, self.dim, self.action_entries(i))

    def columns(self, i: int) -> dict[int, list[tuple[int, Fraction]]]:
        """``A_i`` grouped by column: ``t -> [(s, value)]``."""
        if self._by_col is None:
            by_col = []
            for a in self._actions:
                cols: dict[int, list[tuple[int, Fraction]]] = {}
                for (s, t), v in sorted(a.items()):
                    cols.setdefault(t, []).append((s, v))
                by_col.append(cols)
            self._by_col = tuple(by_col)
        return self._by_col[i]

    def act(self, i: int, vec: Mapping[int, object]) -> Vector:
        out: Vector = {}
        cols = self.columns(i)
        for t, x in vec.items():
            x = as_fraction(x)
            for s, v in cols.get(t, ()):
                add_into(out, {s: v}, x)
        return out

    def is_trivial_action(self) -> bool:
        return not any(self._actions)

    def check_axiom(self) -> None:
        alg = self.algebra
        for i, j in itertools.combinations(range(alg.dim), 2):
            lhs = _commutator(self._actions[i], self._actions[j])
            rhs: Action = {}
            for k, c in alg.bracket(i, j).items():
                add_into(rhs, self._actions[k], c)
            if lhs != rhs:
                raise ModuleAxiomViolation(i, j)

    def __repr__(self) -> str:
        return f"GModule({self.kind}, dim={self.dim}, over {self.algebra.name or 'algebra'})"


def _mul(a: Action, b: Action) -> Action:
    by_row: dict[int, list[tuple[int, Fraction]]] = {}
    for (s, t), v in b.items():
        by_row.setdefault(s, []).append((t, v))
    out: Action = {}
    for (r, s), x in a.items():
        for t, y in by_row.get(s, ()):
            add_into(out, {(r, t): x * y})
    return out


def _commutator(a: Action, b: Action) -> Action:
    out = _mul(a, b)
    add_into(out, _mul(b, a), -1)
    return out


def make_module(alg: LieAlgebra, kind: str) -> GModule:
    """Adjoint, coadjoint or one-dimensional trivial module.

    Coadjoint uses ``(g phi)(x) = phi([x, g])``: ``A_i[m, k] = c(m, i)_k`` on
    the dual basis, i.e. minus the transpose of ``ad``.
    """
    d = alg.dim
    if kind == "adjoint":
        acts = [{(k, j): v for j in range(d) for k, v in alg.bracket(i, j).items()} for i in range(d)]
        return GModule(alg, d, acts, "adjoint", alg.labels)
    if kind == "coadjoint":
        acts = [{(m, k): v for m in range(d) for k, v in alg.bracket(m, i).items()} for i in range(d)]
        return GModule(alg, d, acts, "coadjoint", [f"{x}*" for x in alg.labels])
    if kind == "trivial":
        return trivial_module(alg, 1)
    raise ValueError(f"unknown module kind {kind!r}")


def trivial_module(alg: LieAlgebra, dim: int = 1) -> GModule:
    labels = ["1"] if dim == 1 else [f"e{t}" for t in range(dim)]
    return GModule(alg, dim, [{} for _ in range(alg.dim)], "trivial", labels, validate=False)


def restrict(module: GModule, sub: SubalgebraEmbedding) -> GModule:
    """The same space viewed as a module over a subalgebra."""
    if sub.parent is not module.algebra and sub.parent != module.algebra:
        raise ValueError("subalgebra of a different algebra")
    kind = "trivial" if module.kind == "trivial" else "custom"
    return GModule(sub.as_algebra(), module.dim, [module.action(i) for i in sub.member_indices],
                   kind, module.labels)


def submodule(module: GModule, indices: Sequence[int]) -> GModule:
    """Span of a subset of the module's basis vectors; must be invariant."""
    local = {t: a for a, t in enumerate(indices)}
    acts = []
    for i in range(module.algebra.dim):
        act = {}
        for (s, t), v in module.action(i).items():
            if t in local:
                if s not in local:
                    raise NotClosed(f"basis vector {module.labels[t]} leaves the span")
                act[(local[s], local[t])] = v
        acts.append(act)
    return GModule(module.algebra, len(indices), acts, "custom",
                   [module.labels[t] for t in indices], validate=False)


def dual(module: GModule) -> GModule:
    acts = [{(t, s): -v for (s, t), v in module.action(i).items()} for i in range(module.algebra.dim)]
    return GModule(module.algebra, module.dim, acts, "custom",
                   [f"{x}*" for x in module.labels], validate=False)


def tensor(m1: GModule, m2: GModule) -> GModule:
    """``M1 (x) M2`` with basis index ``a * dim(M2) + b``."""
    if m1.algebra != m2.algebra:
        raise ValueError("modules over different algebras")
    d2 = m2.dim
    acts = []
    for i in range(m1.algebra.dim):
        act: Action = {}
        for (s, t), v in m1.action(i).items():
            for b in range(d2):
                act[(s * d2 + b, t * d2 + b)] = v
        for (s, t), v in m2.action(i).items():
            for a in range(m1.dim):
                add_into(act, {(a * d2 + s, a * d2 + t): v})
        acts.append(act)
    labels = [f"{x}(x){y}" for x in m1.labels for y in m2.labels]
    return GModule(m1.algebra, m1.dim * d2, acts, "custom", labels, validate=False)


def exterior_power(module: GModule, k: int) -> GModule:
    """``Lambda^k M`` on increasing index tuples (lexicographic)."""
    basis = list(itertools.combinations(range(module.dim), k))
    index = {b: n for n, b in enumerate(basis)}
    acts = []
    for i in range(module.algebra.dim):
        cols = module.columns(i)
        act: Action = {}
        for n, tup in enumerate(basis):
            for pos, t in enumerate(tup):
                for s, v in cols.get(t, ()):
                    new = list(tup)
                    new[pos] = s
                    if len(set(new)) < k:
                        continue
                    sign = _sort_sign(new)
                    add_into(act, {(index[tuple(sorted(new))], n): sign * v})
        acts.append(act)
    labels = ["^".join(module.labels[t] for t in b) if b else "1" for b in basis]
    return GModule(module.algebra, len(basis), acts, "custom", labels, validate=False)


def _sort_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                sign = -sign
    return sign
