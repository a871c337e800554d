# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled elimination kernels; see ``_pykernels`` for the contract."""

from libc.stdint cimport int64_t
from libcpp.vector cimport vector
from libcpp.queue cimport priority_queue

import numpy as np

cdef extern from *:
    """
    #include <stdint.h>
    static inline int lc_mul_ovf(int64_t a, int64_t b, int64_t *out) {
        return __builtin_mul_overflow(a, b, out);
    }
    static inline int lc_sub_ovf(int64_t a, int64_t b, int64_t *out) {
        return __builtin_sub_overflow(a, b, out);
    }
    """
    bint lc_mul_ovf(int64_t a, int64_t b, int64_t *out) nogil
    bint lc_sub_ovf(int64_t a, int64_t b, int64_t *out) nogil


cdef inline int64_t _modinv(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef inline int64_t _gcd(int64_t a, int64_t b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def rank_mod_p(const int64_t[:] indptr, const int64_t[:] indices, const int64_t[:] data,
               Py_ssize_t ncols, int64_t p):
    cdef Py_ssize_t nrows = indptr.shape[0] - 1
    cdef vector[int64_t] acc = vector[int64_t](ncols, 0)
    cdef vector[char] mark = vector[char](ncols, 0)
    cdef vector[int64_t] piv_of_col = vector[int64_t](ncols, -1)
    cdef vector[int64_t] pstart
    cdef vector[int64_t] pcols
    cdef vector[int64_t] pvals
    cdef vector[int64_t] prow_ids
    cdef priority_queue[int64_t] heap
    cdef Py_ssize_t r, e, limit = min(nrows, ncols)
    cdef int64_t c, cc, v, k, inv, nv
    pstart.push_back(0)
    with nogil:
        for r in range(nrows):
            if <Py_ssize_t>prow_ids.size() == limit:
                break
            for e in range(indptr[r], indptr[r + 1]):
                c = indices[e]
                v = data[e]
                if v == 0:
                    continue
                acc[c] = v
                if not mark[c]:
                    mark[c] = 1
                    heap.push(-c)
            while not heap.empty():
                c = -heap.top()
                heap.pop()
                mark[c] = 0
                v = acc[c]
                if v == 0:
                    continue
                k = piv_of_col[c]
                if k >= 0:
                    acc[c] = 0
                    for e in range(pstart[k] + 1, pstart[k + 1]):
                        cc = pcols[e]
                        nv = (acc[cc] - (v * pvals[e]) % p) % p
                        if nv < 0:
                            nv += p
                        acc[cc] = nv
                        if not mark[cc]:
                            mark[cc] = 1
                            heap.push(-cc)
                else:
                    inv = _modinv(v, p)
                    piv_of_col[c] = <int64_t>prow_ids.size()
                    prow_ids.push_back(r)
                    pcols.push_back(c)
                    pvals.push_back(1)
                    acc[c] = 0
                    while not heap.empty():
                        cc = -heap.top()
                        heap.pop()
                        mark[cc] = 0
                        if acc[cc] != 0:
                            pcols.push_back(cc)
                            pvals.push_back((acc[cc] * inv) % p)
                            acc[cc] = 0
                    pstart.push_back(<int64_t>pcols.size())
                    break
    out = np.empty(prow_ids.size(), dtype=np.int64)
    cdef int64_t[:] outv = out
    for r in range(<Py_ssize_t>prow_ids.size()):
        outv[r] = prow_ids[r]
    return int(prow_ids.size()), out.tolist()


def rank_fraction_free(const int64_t[:] indptr, const int64_t[:] indices, const int64_t[:] data,
                       Py_ssize_t ncols, bint keep=False):
    """int64 fraction-free elimination; raises OverflowError on coefficient growth.

    With ``keep`` also returns the echelon as ``(pstart, pcols, pvals)``.
    """
    cdef Py_ssize_t nrows = indptr.shape[0] - 1
    cdef vector[int64_t] acc = vector[int64_t](ncols, 0)
    cdef vector[char] mark = vector[char](ncols, 0)
    cdef vector[char] seen = vector[char](ncols, 0)
    cdef vector[int64_t] touched
    cdef vector[int64_t] piv_of_col = vector[int64_t](ncols, -1)
    cdef vector[int64_t] pstart
    cdef vector[int64_t] pcols
    cdef vector[int64_t] pvals
    cdef vector[int64_t] prow_ids
    cdef priority_queue[int64_t] heap
    cdef Py_ssize_t r, e, t, start, limit = min(nrows, ncols)
    cdef int64_t c, cc, v, k, lead, g, a, b, prod, nv, content
    cdef bint overflow = False
    pstart.push_back(0)
    with nogil:
        for r in range(nrows):
            if overflow or <Py_ssize_t>prow_ids.size() == limit:
                break
            touched.clear()
            for e in range(indptr[r], indptr[r + 1]):
                c = indices[e]
                v = data[e]
                if v == 0:
                    continue
                acc[c] = v
                if not seen[c]:
                    seen[c] = 1
                    touched.push_back(c)
                if not mark[c]:
                    mark[c] = 1
                    heap.push(-c)
            while not heap.empty():
                c = -heap.top()
                heap.pop()
                mark[c] = 0
                v = acc[c]
                if v == 0:
                    continue
                k = piv_of_col[c]
                if k >= 0:
                    lead = pvals[pstart[k]]
                    g = _gcd(lead, v)
                    a = lead // g
                    b = v // g
                    acc[c] = 0
                    if a != 1:
                        for t in range(<Py_ssize_t>touched.size()):
                            cc = touched[t]
                            if acc[cc] != 0:
                                if lc_mul_ovf(acc[cc], a, &prod):
                                    overflow = True
                                    break
                                acc[cc] = prod
                        if overflow:
                            break
                    for e in range(pstart[k] + 1, pstart[k + 1]):
                        cc = pcols[e]
                        if lc_mul_ovf(b, pvals[e], &prod) or lc_sub_ovf(acc[cc], prod, &nv):
                            overflow = True
                            break
                        acc[cc] = nv
                        if not seen[cc]:
                            seen[cc] = 1
                            touched.push_back(cc)
                        if not mark[cc]:
                            mark[cc] = 1
                            heap.push(-cc)
                    if overflow:
                        break
                else:
                    piv_of_col[c] = <int64_t>prow_ids.size()
                    prow_ids.push_back(r)
                    start = <Py_ssize_t>pcols.size()
                    pcols.push_back(c)
                    pvals.push_back(v)
                    acc[c] = 0
                    content = v
                    while not heap.empty():
                        cc = -heap.top()
                        heap.pop()
                        mark[cc] = 0
                        if acc[cc] != 0:
                            pcols.push_back(cc)
                            pvals.push_back(acc[cc])
                            content = _gcd(content, acc[cc])
                            acc[cc] = 0
                    if v < 0:
                        content = -content
                    if content != 1:
                        for t in range(start, <Py_ssize_t>pcols.size()):
                            pvals[t] = pvals[t] // content
                    pstart.push_back(<int64_t>pcols.size())
                    break
            # clear per-row scratch
            while not heap.empty():
                cc = -heap.top()
                heap.pop()
                mark[cc] = 0
            for t in range(<Py_ssize_t>touched.size()):
                cc = touched[t]
                acc[cc] = 0
                seen[cc] = 0
    if overflow:
        raise OverflowError("int64 coefficient growth in fraction-free elimination")
    pivots = [int(prow_ids[t]) for t in range(<Py_ssize_t>prow_ids.size())]
    if not keep:
        return int(prow_ids.size()), pivots
    return int(prow_ids.size()), pivots, (_to_array(pstart), _to_array(pcols), _to_array(pvals))


cdef object _to_array(vector[int64_t]& v):
    out = np.empty(v.size(), dtype=np.int64)
    cdef int64_t[:] view = out
    cdef Py_ssize_t i
    for i in range(<Py_ssize_t>v.size()):
        view[i] = v[i]
    return out
