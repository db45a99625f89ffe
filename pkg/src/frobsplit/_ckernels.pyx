# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``; same signatures and results."""
from heapq import heappop, heappush

BACKEND = "cython"


cpdef object order_key(object e, tuple blocks):
    cdef object k = 0
    cdef tuple blk
    for blk in blocks:
        k |= ((((e >> blk[0]) & blk[1]) * blk[2]) & blk[3]) << blk[4]
    return k


def mul(dict a, dict b, long long p):
    cdef dict out = {}
    cdef long long ca, cb, c
    cdef object ea, eb, e, old
    if len(a) < len(b):
        a, b = b, a
    cdef list ia = list(a.items())
    cdef tuple ta
    for eb, cb_o in b.items():
        cb = cb_o
        for ta in ia:
            ea = ta[0]
            ca = ta[1]
            e = ea + eb
            old = out.get(e)
            if old is None:
                c = (ca * cb) % p
            else:
                c = (<long long>old + ca * cb) % p
            if c:
                out[e] = c
            elif old is not None:
                del out[e]
    return out


def axpy(dict a, dict b, long long c, object m, long long p):
    cdef dict out = dict(a)
    cdef long long v, cb
    cdef object e, old
    for e0, cb_o in b.items():
        cb = cb_o
        e = e0 + m
        old = out.get(e)
        if old is None:
            v = (c * cb) % p
        else:
            v = (<long long>old + c * cb) % p
        if v:
            out[e] = v
        elif old is not None:
            del out[e]
    return out


def reduce(dict f, list lts, list tails, tuple blocks, object guard, long long p, bint full):
    cdef dict rem = {}
    cdef list heap = []
    cdef Py_ssize_t j, nb = len(lts)
    cdef long long c, d, v, oldv
    cdef object e, t, m, lt, old
    cdef dict tail
    f = dict(f)
    for e in f:
        heappush(heap, (-order_key(e, blocks), e))
    while heap:
        e = heappop(heap)[1]
        old = f.pop(e, None)
        if old is None:
            continue
        c = old
        j = 0
        while j < nb:
            lt = lts[j]
            if ((e | guard) - lt) & guard == guard:
                break
            j += 1
        if j == nb:
            rem[e] = c
            if not full:
                rem.update(f)
                return rem
            continue
        m = e - lts[j]
        tail = tails[j]
        for t0, d_o in tail.items():
            d = d_o
            t = t0 + m
            old = f.get(t)
            if old is None:
                v = (p - (c * d) % p) % p
                if v:
                    f[t] = v
                    heappush(heap, (-order_key(t, blocks), t))
            else:
                oldv = old
                v = (oldv - c * d) % p
                if v < 0:
                    v += p
                if v:
                    f[t] = v
                else:
                    del f[t]
    return rem


def cartier(dict f, long long q, int nvars, int bits):
    cdef long long fmask = (1 << bits) - 1
    cdef long long a
    cdef int i
    cdef dict out = {}
    cdef object e, new
    cdef bint ok
    for e, c in f.items():
        new = 0
        ok = True
        for i in range(nvars):
            a = ((e >> (i * bits)) & fmask) + 1
            if a % q:
                ok = False
                break
            new |= (a // q - 1) << (i * bits)
        if ok:
            out[new] = c
    return out
