"""Sparse cochains on tensor and exterior powers, chains and functionals."""
from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from ..exact_linalg import DimensionMismatch, as_fraction
from ..lie_core.errors import ParseError
from .indexing import sort_sign, tensor_index, tensor_tuple, wedge_basis, wedge_positions

Key = tuple[tuple[int, ...], int]


class _Sparse:
    """Shared storage: ``{(tuple, target): Fraction}`` without zeros."""

    __slots__ = ("arity", "alg_dim", "module_dim", "_coeffs")
    kind = "tensor"

    def __init__(self, arity: int, alg_dim: int, module_dim: int,
                 coefficients: Mapping[Key, object] | Iterable[tuple[Key, object]] = ()):
        self.arity = int(arity)
        self.alg_dim = int(alg_dim)
        self.module_dim = int(module_dim)
        if self.arity < 0:
            raise ValueError("arity must be non-negative")
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        store: dict[Key, Fraction] = {}
        for (tup, t), value in items:
            tup = tuple(int(x) for x in tup)
            t = int(t)
            if len(tup) != self.arity:
                raise DimensionMismatch(f"tuple {tup} has wrong length for arity {self.arity}")
            if any(not 0 <= x < self.alg_dim for x in tup) or not 0 <= t < self.module_dim:
                raise IndexError(f"index out of range in {(tup, t)}")
            value = as_fraction(value)
            sign, tup = self._normalize(tup)
            if not sign or not value:
                continue
            nv = store.get((tup, t), 0) + sign * value
            if nv:
                store[(tup, t)] = nv
            else:
                store.pop((tup, t), None)
        self._coeffs = store

    # subclasses with alternating keys override this
    @staticmethod
    def _normalize(tup: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        return 1, tup

    def _new(self, coeffs) -> "_Sparse":
        return type(self)(self.arity, self.alg_dim, self.module_dim, coeffs)

    # -- container protocol ---------------------------------------------------
    @property
    def coefficients(self) -> dict[Key, Fraction]:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def __len__(self) -> int:
        return len(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check_same(self, other: "_Sparse") -> None:
        if type(other) is not type(self) or (other.arity, other.alg_dim, other.module_dim) != (
                self.arity, self.alg_dim, self.module_dim):
            raise DimensionMismatch("cochains live in different spaces")

    def __eq__(self, other) -> bool:
        if not isinstance(other, _Sparse):
            return NotImplemented
        return (type(other) is type(self) and other.arity == self.arity
                and other.alg_dim == self.alg_dim and other.module_dim == self.module_dim
                and other._coeffs == self._coeffs)

    __hash__ = None

    def __add__(self, other: "_Sparse") -> "_Sparse":
        self._check_same(other)
        out = dict(self._coeffs)
        for key, v in other._coeffs.items():
            out[key] = out.get(key, 0) + v
        return self._new(out)

    def __neg__(self) -> "_Sparse":
        return self._new({k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: "_Sparse") -> "_Sparse":
        return self + (-other)

    def scale(self, factor) -> "_Sparse":
        f = as_fraction(factor)
        return self._new({k: f * v for k, v in self._coeffs.items()})

    def __rmul__(self, factor) -> "_Sparse":
        return self.scale(factor)

    def first_difference(self, other: "_Sparse") -> Key | None:
        """Smallest key where the two differ, or None."""
        keys = sorted(set(self._coeffs) | set(other._coeffs))
        for key in keys:
            if self._coeffs.get(key, 0) != other._coeffs.get(key, 0):
                return key
        return None

    # -- coordinates ----------------------------------------------------------
    def space_dim(self) -> int:
        return self._tuple_count() * self.module_dim

    def _tuple_count(self) -> int:
        return self.alg_dim ** self.arity

    def _tuple_code(self, tup: tuple[int, ...]) -> int:
        return tensor_index(tup, self.alg_dim)

    def _code_tuple(self, code: int) -> tuple[int, ...]:
        return tensor_tuple(code, self.alg_dim, self.arity)

    def coordinate(self, key: Key) -> int:
        tup, t = key
        return self._tuple_code(tup) * self.module_dim + t

    def to_vector(self) -> dict[int, Fraction]:
        """Sparse coordinates ``{index: value}`` in the complex's basis order."""
        return {self.coordinate(k): v for k, v in self._coeffs.items()}

    def to_dense(self) -> list[Fraction]:
        vec = [Fraction(0)] * self.space_dim()
        for i, v in self.to_vector().items():
            vec[i] = v
        return vec

    @classmethod
    def from_vector(cls, vector, arity: int, alg_dim: int, module_dim: int) -> "_Sparse":
        proto = cls(arity, alg_dim, module_dim)
        items = vector.items() if isinstance(vector, Mapping) else enumerate(vector)
        coeffs = {}
        for i, v in items:
            v = as_fraction(v)
            if v:
                code, t = divmod(int(i), module_dim)
                coeffs[(proto._code_tuple(code), t)] = v
        return cls(arity, alg_dim, module_dim, coeffs)

    # -- serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {"kind": self.kind, "arity": self.arity, "alg_dim": self.alg_dim,
                "module_dim": self.module_dim,
                "coefficients": [{"tuple": list(t), "target": x, "value": str(v)}
                                 for (t, x), v in self.items()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict, alg_dim: int | None = None, module_dim: int | None = None) -> "_Sparse":
        try:
            arity = int(data["arity"])
            alg_dim = int(data.get("alg_dim", alg_dim))
            module_dim = int(data.get("module_dim", module_dim))
            coeffs = [((tuple(c["tuple"]), int(c["target"])), Fraction(str(c["value"])))
                      for c in data["coefficients"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed cochain record: {exc}") from exc
        return cls(arity, alg_dim, module_dim, coeffs)

    def __repr__(self) -> str:
        return (f"{type(self).__name__}(arity={self.arity}, alg_dim={self.alg_dim}, "
                f"module_dim={self.module_dim}, nnz={len(self._coeffs)})")


class TensorCochain(_Sparse):
    """``f(b_{i1} (x) ... (x) b_{ik}) = sum_t coeff * v_t`` on all index tuples."""

    __slots__ = ()
    kind = "tensor"

    def value(self, tup) -> dict[int, Fraction]:
        tup = tuple(tup)
        return {t: v for (k, t), v in self._coeffs.items() if k == tup}

    def values(self) -> dict[tuple[int, ...], dict[int, Fraction]]:
        out: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for (tup, t), v in self._coeffs.items():
            out.setdefault(tup, {})[t] = v
        return out


class WedgeCochain(_Sparse):
    """Alternating cochain stored on increasing tuples.

    Keys given in any order are sorted with the permutation sign; keys with
    repeated indices are dropped.
    """

    __slots__ = ()
    kind = "wedge"

    @staticmethod
    def _normalize(tup):
        return sort_sign(tup)

    def value(self, tup) -> dict[int, Fraction]:
        sign, key = sort_sign(tuple(tup))
        if not sign:
            return {}
        return {t: sign * v for (k, t), v in self._coeffs.items() if k == key}

    def values(self) -> dict[tuple[int, ...], dict[int, Fraction]]:
        out: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for (tup, t), v in self._coeffs.items():
            out.setdefault(tup, {})[t] = v
        return out

    def _tuple_count(self) -> int:
        return comb(self.alg_dim, self.arity)

    def _tuple_code(self, tup):
        return wedge_positions(self.alg_dim, self.arity)[tup]

    def _code_tuple(self, code):
        return wedge_basis(self.alg_dim, self.arity)[code]

    def to_tensor(self) -> TensorCochain:
        """The same map evaluated on all tensor tuples (skew extension)."""
        from itertools import permutations
        coeffs = {}
        for (tup, t), v in self._coeffs.items():
            for perm in permutations(range(self.arity)):
                permuted = tuple(tup[p] for p in perm)
                coeffs[(permuted, t)] = sort_sign(permuted)[0] * v
        return TensorCochain(self.arity, self.alg_dim, self.module_dim, coeffs)


class HomologyChain(WedgeCochain):
    """Element of ``V (x) Lambda^k g``: key ``(S, x)`` stands for ``v_x (x) b_S``."""

    __slots__ = ()
    kind = "chain"

    def coordinate(self, key: Key) -> int:
        tup, x = key
        return x * comb(self.alg_dim, self.arity) + self._tuple_code(tup)

    @classmethod
    def from_vector(cls, vector, arity, alg_dim, module_dim):
        block = comb(alg_dim, arity)
        items = vector.items() if isinstance(vector, Mapping) else enumerate(vector)
        coeffs = {}
        for i, v in items:
            v = as_fraction(v)
            if v:
                x, code = divmod(int(i), block)
                coeffs[(wedge_basis(alg_dim, arity)[code], x)] = v
        return cls(arity, alg_dim, module_dim, coeffs)


class ChainFunctional(HomologyChain):
    """Linear functional on ``V (x) Lambda^k g``: key ``(S, x)`` holds ``phi(v_x (x) b_S)``."""

    __slots__ = ()
    kind = "functional"

    def pair(self, chain: HomologyChain) -> Fraction:
        if chain.arity != self.arity:
            raise DimensionMismatch("pairing chains of different degree")
        return sum((v * self._coeffs.get(k, 0) for k, v in chain._coeffs.items()), Fraction(0))


def load_cochain(data: dict | str, alg_dim: int | None = None, module_dim: int | None = None) -> _Sparse:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    kinds = {"tensor": TensorCochain, "wedge": WedgeCochain, "chain": HomologyChain,
             "functional": ChainFunctional}
    kind = data.get("kind", "tensor") if isinstance(data, dict) else None
    if kind not in kinds:
        raise ParseError(f"unknown cochain kind {kind!r}")
    return kinds[kind].from_json(data, alg_dim, module_dim)
