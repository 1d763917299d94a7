# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for graphs on at most 64 vertices (uint64 bitsets)."""

import numpy as np
cimport numpy as cnp

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil

BACKEND = "cython"
MAX_VERTICES = 64


cdef struct Search:
    u64 cadj[64]
    int best_size
    u64 best_mask


cdef void _expand(Search* s, u64 r_mask, int r_size, u64 p) noexcept nogil:
    cdef int order[64]
    cdef int colors[64]
    cdef int count = 0
    cdef int k = 0
    cdef u64 u = p
    cdef u64 q, low, np_
    cdef int v, i
    while u:
        k += 1
        q = u
        while q:
            low = q & (~q + 1)
            v = __builtin_ctzll(q)
            u &= ~low
            q &= ~low & ~s.cadj[v]
            order[count] = v
            colors[count] = k
            count += 1
    i = count - 1
    while i >= 0:
        if r_size + colors[i] <= s.best_size:
            return
        v = order[i]
        np_ = p & s.cadj[v]
        if np_:
            _expand(s, r_mask | (<u64>1 << v), r_size + 1, np_)
        elif r_size + 1 > s.best_size:
            s.best_size = r_size + 1
            s.best_mask = r_mask | (<u64>1 << v)
        p &= ~(<u64>1 << v)
        i -= 1


cdef u64 _full(int n):
    if n == 64:
        return ~(<u64>0)
    return (<u64>1 << n) - 1


cdef list _bits(u64 mask):
    out = []
    while mask:
        out.append(__builtin_ctzll(mask))
        mask &= mask - 1
    return out


def max_independent_set(adj, int n, excluded=0):
    if n > MAX_VERTICES:
        raise ValueError("compiled kernel handles at most 64 vertices")
    cdef Search s
    cdef u64 full = _full(n)
    cdef int v
    for v in range(n):
        s.cadj[v] = ~(<u64>adj[v]) & full & ~(<u64>1 << v)
    s.best_size = 0
    s.best_mask = 0
    cdef u64 allowed = full & ~(<u64>excluded)
    if allowed:
        with nogil:
            _expand(&s, 0, 0, allowed)
    return _bits(s.best_mask)


def greedy_independent_sets(adj, int n, excluded, cnp.ndarray orders):
    if n > MAX_VERTICES:
        raise ValueError("compiled kernel handles at most 64 vertices")
    cdef u64 a[64]
    cdef int pos[64]
    cdef u64 full = _full(n)
    cdef u64 allowed = full & ~(<u64>excluded)
    cdef long long[:, :] ords = np.ascontiguousarray(orders, dtype=np.int64)
    cdef Py_ssize_t trials = ords.shape[0]
    cdef Py_ssize_t t
    cdef int i, v, pick, deg, best_deg, best_pos
    cdef int best_size = 0, s_size
    cdef u64 best_mask = 0, cand, c, s_mask
    for v in range(n):
        a[v] = <u64>adj[v]
    with nogil:
        for t in range(trials):
            for i in range(n):
                pos[ords[t, i]] = i
            cand = allowed
            s_mask = 0
            s_size = 0
            while cand:
                pick = -1
                best_deg = 1000
                best_pos = 1000
                c = cand
                while c:
                    v = __builtin_ctzll(c)
                    c &= c - 1
                    deg = __builtin_popcountll(a[v] & cand)
                    if deg < best_deg or (deg == best_deg and pos[v] < best_pos):
                        pick = v
                        best_deg = deg
                        best_pos = pos[v]
                s_mask |= <u64>1 << pick
                s_size += 1
                cand &= ~(a[pick] | (<u64>1 << pick))
            if s_size > best_size:
                best_size = s_size
                best_mask = s_mask
    return _bits(best_mask)
