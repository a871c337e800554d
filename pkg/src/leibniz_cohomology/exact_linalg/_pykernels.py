"""Pure-Python elimination kernels.

Same contract as the compiled ``_ckernels`` module, which is preferred when
it imports.  Both take a CSR matrix whose rows are already in processing
order and whose column indices are already permuted into pivot-priority
order (lower index = preferred pivot).  Rows are eliminated one at a time
against the echelon built so far; a row that survives becomes a pivot at
its smallest remaining column.
"""
from __future__ import annotations

import heapq
from math import gcd


def rank_mod_p(indptr, indices, data, ncols, p):
    """Rank over GF(p); returns ``(rank, pivot_rows)``.

    ``data`` must already be reduced into ``[0, p)``.
    """
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    data = [int(x) for x in data]
    nrows = len(indptr) - 1
    pivots: dict[int, list[tuple[int, int]]] = {}
    pivot_rows = []
    limit = min(nrows, ncols)
    for r in range(nrows):
        if len(pivot_rows) == limit:
            break
        acc: dict[int, int] = {}
        for e in range(indptr[r], indptr[r + 1]):
            if data[e]:
                acc[indices[e]] = data[e]
        heap = list(acc)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            v = acc.pop(c, 0)
            if not v:
                continue
            prow = pivots.get(c)
            if prow is not None:
                for cc, vv in prow:
                    old = acc.get(cc)
                    nv = ((old or 0) - v * vv) % p
                    if old is None:
                        heapq.heappush(heap, cc)
                    acc[cc] = nv
            else:
                inv = pow(v, p - 2, p)
                pivots[c] = [(cc, vv * inv % p) for cc, vv in sorted(acc.items()) if vv]
                pivot_rows.append(r)
                break
    return len(pivot_rows), pivot_rows


def rank_fraction_free(indptr, indices, data, ncols, keep=False):
    """Rank over Q of an integer matrix by fraction-free elimination.

    Each reduction step is ``row <- (L/g) row - (v/g) pivot`` with
    ``g = gcd(L, v)``; surviving pivots are made primitive.  Never overflows
    (Python integers); returns ``(rank, pivot_rows)`` and, with ``keep``,
    the echelon as ``(pstart, pcols, pvals)`` lists (lead entry first).
    """
    indptr = [int(x) for x in indptr]
    indices = [int(x) for x in indices]
    data = [int(x) for x in data]
    nrows = len(indptr) - 1
    pivots: dict[int, tuple[int, list[tuple[int, int]]]] = {}
    pivot_rows = []
    order = []
    limit = min(nrows, ncols)
    for r in range(nrows):
        if len(pivot_rows) == limit:
            break
        acc: dict[int, int] = {}
        for e in range(indptr[r], indptr[r + 1]):
            if data[e]:
                acc[indices[e]] = data[e]
        heap = list(acc)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            v = acc.pop(c, 0)
            if not v:
                continue
            piv = pivots.get(c)
            if piv is not None:
                lead, prow = piv
                g = gcd(lead, v)
                a, b = lead // g, v // g
                if a != 1:
                    for cc in acc:
                        acc[cc] *= a
                for cc, vv in prow:
                    old = acc.get(cc)
                    if old is None:
                        heapq.heappush(heap, cc)
                        acc[cc] = -b * vv
                    else:
                        acc[cc] = old - b * vv
            else:
                row = [(c, v)] + sorted((cc, vv) for cc, vv in acc.items() if vv)
                content = 0
                for _, vv in row:
                    content = gcd(content, vv)
                    if content == 1:
                        break
                if v < 0:
                    content = -content
                pivots[c] = (v // content, [(cc, vv // content) for cc, vv in row[1:]])
                pivot_rows.append(r)
                order.append(c)
                break
    if not keep:
        return len(pivot_rows), pivot_rows
    pstart, pcols, pvals = [0], [], []
    for c in order:
        lead, rest = pivots[c]
        pcols.append(c)
        pvals.append(lead)
        for cc, vv in rest:
            pcols.append(cc)
            pvals.append(vv)
        pstart.append(len(pcols))
    return len(pivot_rows), pivot_rows, (pstart, pcols, pvals)
