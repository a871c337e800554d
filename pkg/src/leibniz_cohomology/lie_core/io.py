"""JSON serialization of algebras.

Format::

    {"name": "sl_2", "dim": 3, "labels": ["e", "f", "h"],
     "brackets": [{"i": 0, "j": 1, "coeffs": [{"k": 2, "value": "1"}]}, ...]}

Indices are 0-based, only ``i < j`` may be listed, values are ``"p"`` or
``"p/q"`` strings (integers are accepted too).
"""
from __future__ import annotations

import json
from fractions import Fraction
from os import PathLike
from typing import IO

from .algebra import LieAlgebra
from .errors import AntisymmetryViolation, ParseError


def _value(raw) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise ParseError(f"coefficient must be a string 'p/q' or an integer, got {raw!r}")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coefficient {raw!r}") from exc


def algebra_from_dict(data: dict) -> LieAlgebra:
    if not isinstance(data, dict):
        raise ParseError("algebra file must hold a JSON object")
    try:
        labels = data["labels"]
        dim = data.get("dim", len(labels))
        raw_brackets = data.get("brackets", [])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"missing field: {exc}") from exc
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ParseError("labels must be a list of strings")
    if not isinstance(dim, int) or dim != len(labels):
        raise ParseError("dim must equal the number of labels")
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for rec in raw_brackets:
        try:
            i, j, coeffs = rec["i"], rec["j"], rec.get("coeffs", [])
            vec = {}
            for c in coeffs:
                k = c["k"]
                if not isinstance(k, int) or not 0 <= k < dim:
                    raise ParseError(f"coefficient index {k!r} out of range")
                vec[k] = vec.get(k, 0) + _value(c["value"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed bracket record {rec!r}") from exc
        if not all(isinstance(x, int) and 0 <= x < dim for x in (i, j)):
            raise ParseError(f"bracket indices ({i!r}, {j!r}) out of range")
        if i == j:
            if any(vec.values()):
                raise AntisymmetryViolation(i, j, "[x, x] must vanish")
            continue
        if i > j:
            raise ParseError(f"only pairs with i < j may be listed, got ({i}, {j})")
        if (i, j) in brackets:
            raise ParseError(f"pair ({i}, {j}) listed twice")
        brackets[(i, j)] = vec
    subalgebras = data.get("subalgebras") or {}
    return LieAlgebra(labels, brackets, name=str(data.get("name", "")), subalgebras=subalgebras)


def algebra_to_dict(alg: LieAlgebra) -> dict:
    records = []
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            vec = alg.bracket(i, j)
            if vec:
                records.append({"i": i, "j": j, "coeffs": [
                    {"k": k, "value": str(v)} for k, v in sorted(vec.items())]})
    out = {"name": alg.name, "dim": alg.dim, "labels": list(alg.labels), "brackets": records}
    if alg.subalgebras:
        out["subalgebras"] = {k: list(v) for k, v in alg.subalgebras.items()}
    return out


def load_algebra(source: str | PathLike | IO[str]) -> LieAlgebra:
    """Read and validate an algebra from a path or open text file."""
    try:
        if hasattr(source, "read"):
            data = json.load(source)
        else:
            with open(source, encoding="utf-8") as fh:
                data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return algebra_from_dict(data)


def dump_algebra(alg: LieAlgebra, target: str | PathLike | IO[str] | None = None) -> str:
    text = json.dumps(algebra_to_dict(alg), indent=2, sort_keys=True)
    if target is None:
        return text
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
