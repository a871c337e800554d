"""Long exact sequences of a short exact sequence ``0 -> A -> B -> B/A -> 0``.

Every map in the sequence is computed from its own definition, sector by
sector:

* ``i*_j : H^j(A) -> H^j(B)``: cocycles of ``A`` pushed into ``B`` and
  reduced modulo ``im d_B``; the rank is the number of independent residues.
* ``q*_j : H^j(B) -> H^j(B/A)``: a cocycle ``z`` dies iff
  ``z in im d_B + P A^j``; since ``d_B`` kills ``im d_B`` and maps ``P A^j``
  onto ``P d_A A^j``, ``rank q*_j = dim Z^j_B - (rank[d_B | P_j] - rank d_B P_j)``.
* ``c_j : H^j(B/A) -> H^{j+1}(A)`` by the snake lemma: ``h`` is in the
  image exactly when ``P h = d_B f`` for a lift ``f`` of a quotient cocycle,
  so the images are the relations among the residues of ``P e_i`` modulo
  ``im d_B``, taken modulo ``im d_A``.

Exactness at each node is then checked as ``dim - rank(out) == rank(in)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..exact_linalg import (
    ColumnSpaceReducer,
    RankConfig,
    SparseRationalMatrix,
    in_image,
    kernel_basis,
    rank,
    relations,
)
from ..lie_core import GModule, LieAlgebra
from .handles import Budget, ComplexHandle, NotAChainMap, combine, sectors

WHICH = {"rel": "rel", "lie_to_leibniz": "rel", "coadjoint": "coadjoint", "lie_coadjoint": "coadjoint"}


@dataclass
class LESNode:
    space: str
    degree: int
    label: str
    dim: int
    kernel: int
    image: int

    @property
    def exact(self) -> bool:
        return self.kernel == self.image

    def to_json(self) -> dict:
        return {"node": f"{self.space}{self.degree}", "label": self.label, "dim": self.dim,
                "kernel_out": self.kernel, "image_in": self.image, "exact": self.exact}


@dataclass
class LESReport:
    which: str
    algebra: str
    n: int | None
    coefficients: str
    nodes: list[LESNode] = field(default_factory=list)
    maps: dict[str, dict[int, int]] = field(default_factory=dict)
    dims: dict[str, dict[int, int]] = field(default_factory=dict)
    methods: dict[str, str] = field(default_factory=dict)
    lifts_checked: int = 0

    @property
    def exact(self) -> bool:
        return all(node.exact for node in self.nodes)

    def group(self, label: str) -> int:
        for node in self.nodes:
            if node.label == label:
                return node.dim
        raise KeyError(label)

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "n": self.n, "coefficients": self.coefficients,
                "complex": f"les:{self.which}",
                "dims": {space: {str(k): v for k, v in d.items()} for space, d in self.dims.items()},
                "ranks": {name: {str(k): v for k, v in d.items()} for name, d in self.maps.items()},
                "methods": dict(self.methods),
                "exactness": [node.to_json() for node in self.nodes],
                "lifts_checked": self.lifts_checked}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _labels(which: str):
    if which == "rel":
        return {"A": lambda j: f"H^{j}_Lie(g;V)", "B": lambda j: f"HL^{j}(g;V)",
                "Q": lambda j: f"H^{j - 2}_rel(g;V)" if j >= 2 else f"Q^{j}"}
    return {"A": lambda j: f"H^{j + 1}_Lie(g;F)", "B": lambda j: f"H^{j}_Lie(g;g')",
            "Q": lambda j: f"HR^{j - 1}(g)" if j >= 1 else f"Q^{j}"}


class _Sequence:
    def __init__(self, h: ComplexHandle, mode: str, cfg: RankConfig, budget: Budget):
        self.h, self.A, self.B, self.P = h, h.sub, h.ambient, h.inclusion
        self.mode, self.cfg, self.budget = mode, cfg, budget
        self._cache: dict = {}
        self.certs: list = []

    def memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def groups(self, cx, j):
        return self.memo(("groups", id(cx), j), lambda: sectors(cx, j) if j >= 0 else {})

    def block(self, cx, j, key) -> np.ndarray:
        return self.groups(cx, j).get(key, np.zeros(0, dtype=np.int64))

    def _rank(self, m: SparseRationalMatrix, rows: int, cols: int, j: int) -> int:
        cert = rank(m, self.budget.resolve(self.mode, rows, cols, j), self.cfg)
        self.certs.append(cert)
        return cert.rank

    def rank_d(self, cx, j) -> int:
        """Rank of the degree-``j`` differential of ``cx``."""
        if j < 0 or cx.dim(j) == 0 or cx.dim(j + 1) == 0:
            return 0
        return self.memo(("rank", id(cx), j), lambda: sum(
            self._rank(cx.differential(j, cols), cx.dim(j + 1), cx.dim(j), j)
            for cols in self.groups(cx, j).values()))

    def dim_h(self, cx, j) -> int:
        return cx.dim(j) - self.rank_d(cx, j) - self.rank_d(cx, j - 1)

    def rank_stack(self, j) -> int:
        """``rank [d_B^j | P_{j+1}]``, summed over sectors."""
        def run():
            total = 0
            keys = set(self.groups(self.B, j)) | set(self.groups(self.A, j + 1))
            for key in sorted(keys):
                b, a = self.block(self.B, j, key), self.block(self.A, j + 1, key)
                parts = []
                if len(b):
                    parts.append(self.B.differential(j, b))
                if len(a):
                    parts.append(self.P.matrix(j + 1, a))
                if parts:
                    total += self._rank(SparseRationalMatrix.hstack(parts), self.B.dim(j + 1),
                                        len(b) + len(a), j)
            return total
        return self.memo(("stack", j), run)

    def rank_dq(self, j) -> int:
        if j < 0:
            return 0
        return self.rank_stack(j) - self.A.dim(j + 1)

    def dim_q(self, j) -> int:
        dim = self.B.dim(j) - self.A.dim(j)
        return dim - self.rank_dq(j) - self.rank_dq(j - 1)

    def reducer(self, j, key) -> ColumnSpaceReducer:
        """Normal forms modulo ``im d_B^j`` restricted to one sector."""
        def build():
            cols = self.block(self.B, j, key) if j >= 0 else np.zeros(0, dtype=np.int64)
            self.budget.resolve("exact", self.B.dim(j + 1), len(cols), j)
            if not len(cols):
                return ColumnSpaceReducer(SparseRationalMatrix.zeros(self.B.dim(j + 1), 1))
            return ColumnSpaceReducer(self.B.differential(j, cols))
        return self.memo(("reducer", j, key), build)

    # the three maps -------------------------------------------------------

    def iota(self, j) -> int:
        def run():
            total = 0
            for key, cols in self.groups(self.A, j).items():
                kernel = kernel_basis(self.A.differential(j, cols), "exact")
                if not kernel:
                    continue
                image = self.P.matrix(j, cols)
                red = self.reducer(j - 1, key)
                residues = [red.reduce(_dict(image.matvec(z))) for z in kernel]
                residues = [r for r in residues if r]
                total += len(residues) - len(relations(residues))
            return total
        return self.memo(("iota", j), run)

    def q(self, j) -> int:
        def run():
            z_b = self.B.dim(j) - self.rank_d(self.B, j)
            pushed = 0
            for key, a in self.groups(self.A, j).items():
                m = self.P.matrix(j, a)
                rows = np.unique(m.coo()[0])
                if not len(rows) or self.B.dim(j + 1) == 0:
                    continue
                prod = self.B.differential(j, rows) @ m.select_rows(rows)
                pushed += self._rank(prod, self.B.dim(j + 1), len(a), j) if prod.nnz else 0
            return z_b - (self.rank_stack(j - 1) - pushed)
        return self.memo(("q", j), run)

    def connecting(self, j, verify_lifts: bool) -> tuple[int, int]:
        """``(rank c_j, number of explicitly lifted classes)``."""
        def run():
            total = checked = 0
            for key, a in self.groups(self.A, j + 1).items():
                b = self.block(self.B, j, key)
                if not len(b):
                    continue
                red = self.reducer(j, key)
                pm = self.P.matrix(j + 1, a)
                residues = [red.reduce(pm.column(i)) for i in range(len(a))]
                hs = relations(residues)
                if not hs:
                    continue
                if verify_lifts:
                    d_b = self.B.differential(j, b)
                    for y in hs:
                        ok, _ = in_image(d_b, _dict(pm.matvec(y)), "exact")
                        if not ok:  # pragma: no cover - would contradict the reduction
                            raise ArithmeticError("snake lift failed")
                        checked += 1
                entries = [(int(a[i]), c, v) for c, y in enumerate(hs) for i, v in enumerate(y) if v]
                h_mat = SparseRationalMatrix.from_entries(self.A.dim(j + 1), len(hs), entries)
                a_prev = self.block(self.A, j, key)
                if len(a_prev):
                    d_a = self.A.differential(j, a_prev)
                    both = SparseRationalMatrix.hstack([h_mat, d_a])
                    total += rank(both, "exact").rank - rank(d_a, "exact").rank
                else:
                    total += rank(h_mat, "exact").rank
            return total, checked
        return self.memo(("c", j, verify_lifts), run)


def _dict(vec) -> dict[int, Fraction]:
    return {i: v for i, v in enumerate(vec) if v}


def _check_chain_map(seq: _Sequence, top: int) -> None:
    A, B, P = seq.A, seq.B, seq.P
    for j in range(top + 1):
        for key, a in seq.groups(A, j).items():
            m = P.matrix(j, a)
            rows = np.unique(m.coo()[0])
            lhs = B.differential(j, rows) @ m.select_rows(rows) if len(rows) else None
            da = A.differential(j, a)
            rows2 = np.unique(da.coo()[0])
            rhs = P.matrix(j + 1, rows2) @ da.select_rows(rows2) if len(rows2) else None
            if lhs is None and rhs is None:
                continue
            if lhs is None or rhs is None:
                if (lhs if lhs is not None else rhs).is_zero():
                    continue
                raise NotAChainMap(j)
            if lhs != rhs:
                raise NotAChainMap(j, f"({seq.h.kind})")


def long_exact_sequence(which: str, alg: LieAlgebra, coefficients: str | GModule = "adjoint",
                        through: int | None = None, mode: str = "exact",
                        config: RankConfig | None = None, budget: Budget | None = None,
                        verify_lifts: bool = False) -> LESReport:
    """Groups, maps and exactness verdicts of one of the two sequences.

    ``rel``: ``H^j_Lie(g;V) -> HL^j(g;V) -> H^{j-2}_rel -> H^{j+1}_Lie ...``
    through ``HL^through`` (default 4).  ``coadjoint``:
    ``H^{j+1}_Lie(g;F) -> H^j_Lie(g;g') -> HR^{j-1} -> H^{j+2}_Lie(g;F) ...``
    through ``HR^through`` (default 3).
    """
    try:
        which = WHICH[which]
    except KeyError:
        raise ValueError(f"unknown sequence {which!r}") from None
    cfg = config or RankConfig.from_env()
    budget = budget or Budget.from_env()
    if which == "rel":
        h = ComplexHandle.rel(alg, coefficients)
        top = 4 if through is None else through
        last = ("B", top)
    else:
        h = ComplexHandle.cr(alg)
        top = (3 if through is None else through) + 1
        last = ("Q", top)
    seq = _Sequence(h, mode, cfg, budget)
    _check_chain_map(seq, top)
    labels = _labels(which)
    report = LESReport(which, alg.name, h.n, h.coefficients)
    dims = {"A": {}, "B": {}, "Q": {}}
    maps = {"iota": {}, "q": {}, "c": {}}
    for j in range(top + 1):
        for space in ("A", "B", "Q"):
            if j == last[1] and "ABQ".index(space) > "ABQ".index(last[0]):
                break
            iota = maps["iota"].setdefault(j, seq.iota(j))
            if space == "A":
                dim = seq.dim_h(seq.A, j)
                c_prev = maps["c"].setdefault(j - 1, seq.connecting(j - 1, verify_lifts)[0]) if j > 0 else 0
                node = LESNode("A", j, labels["A"](j), dim, dim - iota, c_prev)
            elif space == "B":
                dim = seq.dim_h(seq.B, j)
                qj = maps["q"].setdefault(j, seq.q(j))
                node = LESNode("B", j, labels["B"](j), dim, dim - qj, iota)
            else:
                dim = seq.dim_q(j)
                qj = maps["q"].setdefault(j, seq.q(j))
                cj = maps["c"].setdefault(j, seq.connecting(j, verify_lifts)[0])
                node = LESNode("Q", j, labels["Q"](j), dim, dim - cj, qj)
            dims[space][j] = dim
            report.nodes.append(node)
    maps["c"].pop(-1, None)
    report.dims, report.maps = dims, maps
    report.lifts_checked = sum(v[1] for k, v in seq._cache.items()
                               if isinstance(k, tuple) and k[0] == "c" and k[2] == verify_lifts)
    method = combine(seq.certs).method if seq.certs else "exact"
    report.methods = {"ranks": method, "maps": "exact"}
    return report
