"""Basis enumeration for tensor and exterior powers."""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence


def sort_sign(seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on repeats."""
    items = tuple(seq)
    ordered = tuple(sorted(items))
    if len(set(items)) != len(items):
        return 0, ordered
    inversions = sum(1 for a in range(len(items)) for b in range(a + 1, len(items))
                     if items[a] > items[b])
    return (-1 if inversions % 2 else 1), ordered


def tensor_index(tup: Sequence[int], d: int) -> int:
    """Base-``d`` code of a tuple, first entry most significant."""
    code = 0
    for x in tup:
        code = code * d + x
    return code


def tensor_tuple(code: int, d: int, k: int) -> tuple[int, ...]:
    out = [0] * k
    for pos in range(k - 1, -1, -1):
        code, out[pos] = divmod(code, d)
    return tuple(out)


@lru_cache(maxsize=256)
def wedge_basis(d: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Increasing ``k``-tuples from ``range(d)`` in lexicographic order."""
    return tuple(itertools.combinations(range(d), k))


@lru_cache(maxsize=256)
def wedge_positions(d: int, k: int) -> dict[tuple[int, ...], int]:
    return {t: i for i, t in enumerate(wedge_basis(d, k))}


def wedge_index(tup: Sequence[int], d: int) -> int:
    return wedge_positions(d, len(tup))[tuple(tup)]
