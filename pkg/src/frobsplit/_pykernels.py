"""Pure-Python hot kernels.

Polynomials are ``dict[int, int]`` mapping a packed exponent vector to a
nonzero residue mod p. Variable ``i`` occupies bits ``[i*B, (i+1)*B)``; the
top bit of each field is a guard that must stay clear.

An order is a tuple of blocks ``(shift, wmask, mult, mask, outshift)``; the
sort key of a monomial ``e`` is the sum over blocks of
``((((e >> shift) & wmask) * mult) & mask) << outshift``. Multiplying a
packed field vector by ``1 + 2^B + 2^2B + ...`` produces prefix sums, which is
how graded reverse lexicographic keys come out linear in the exponents.
"""
from heapq import heappop, heappush

BACKEND = "python"


def order_key(e, blocks):
    k = 0
    for shift, wmask, mult, mask, outshift in blocks:
        k |= ((((e >> shift) & wmask) * mult) & mask) << outshift
    return k


def mul(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = ea + eb
            c = (get(e, 0) + ca * cb) % p
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def axpy(a, b, c, m, p):
    """Return ``a + c * x^m * b`` as a new dict."""
    out = dict(a)
    get = out.get
    for e, cb in b.items():
        e += m
        v = (get(e, 0) + c * cb) % p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def reduce(f, lts, tails, blocks, guard, p, full):
    """Normal form of ``f`` modulo monic polynomials ``lt + tail``.

    With ``full`` false, stop at the first irreducible leading term and return
    the rest unreduced (top reduction).
    """
    f = dict(f)
    rem = {}
    heap = []
    for e in f:
        heappush(heap, (-order_key(e, blocks), e))
    nb = len(lts)
    while heap:
        _, e = heappop(heap)
        c = f.pop(e, 0)
        if not c:
            continue
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
        get = f.get
        for t, d in tails[j].items():
            t += m
            old = get(t, 0)
            v = (old - c * d) % p
            if v:
                f[t] = v
                if not old:
                    heappush(heap, (-order_key(t, blocks), t))
            elif old:
                del f[t]
    return rem


def cartier(f, q, nvars, bits):
    """Degree-e Cartier map with ``q = p^e`` on packed terms."""
    fmask = (1 << bits) - 1
    out = {}
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
