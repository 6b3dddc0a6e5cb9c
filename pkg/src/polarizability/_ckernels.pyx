# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels (int64).

Mirrors ``_pykernels`` routine for routine.  Callers must keep inputs inside
the int64-safe envelope checked in ``_backend``.
"""
from array import array
from libc.math cimport sqrt
from libc.stdint cimport int64_t

cdef int64_t INF = 1099511627776  # 2**40

cdef int64_t _isqrt(int64_t n):
    cdef int64_t r = <int64_t> sqrt(<double> n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef int64_t _pmod(int64_t a, int64_t n):
    cdef int64_t r = a % n
    if r < 0:
        r += n
    return r


def trial_divide(int64_t n, int64_t bound):
    cdef list factors = []
    cdef int64_t p, e, step
    for p in (2, 3):
        if p > bound or p * p > n:
            return factors, n
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    p = 5
    step = 2
    while p <= bound and p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        p += step
        step = 6 - step
    return factors, n


def kronecker(int64_t a, int64_t n):
    cdef int result = 1
    cdef int v = 0
    cdef int64_t t
    if n == 0:
        return 1 if (a == 1 or a == -1) else 0
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    while (n & 1) == 0:
        n >>= 1
        v += 1
    if v:
        if (a & 1) == 0:
            return 0
        t = _pmod(a, 8)
        if (v & 1) and (t == 3 or t == 5):
            result = -result
    a = _pmod(a, n)
    while a != 0:
        while (a & 1) == 0:
            a >>= 1
            t = n & 7
            if t == 3 or t == 5:
                result = -result
        t = a
        a = n
        n = t
        if (a & 3) == 3 and (n & 3) == 3:
            result = -result
        a = a % n
    return result if n == 1 else 0


cdef inline bint _on_circle(int64_t q, int64_t a, int64_t b):
    cdef int64_t t
    if a * a > 16 * q:
        return False
    if a * a - 4 * b + 8 * q < 0:
        return False
    t = b + 2 * q
    return t >= 0 and t * t >= 4 * a * a * q


def on_circle(int64_t q, int64_t a, int64_t b):
    return _on_circle(q, a, b)


cdef inline void _b_range(int64_t q, int64_t a, int64_t *lo, int64_t *hi):
    cdef int64_t s = 4 * a * a * q
    cdef int64_t r = _isqrt(s)
    cdef int64_t num
    if r * r < s:
        r += 1
    lo[0] = r - 2 * q
    num = a * a + 8 * q
    # floor division; num >= 0 always
    hi[0] = num // 4


def valid_b_range(int64_t q, int64_t a):
    cdef int64_t lo, hi
    _b_range(q, a, &lo, &hi)
    return lo, hi


def scan_valid(int64_t q):
    cdef list out = []
    cdef int64_t amax = _isqrt(16 * q)
    cdef int64_t a, b, lo, hi
    for a in range(-amax, amax + 1):
        _b_range(q, a, &lo, &hi)
        for b in range(lo, hi + 1):
            out.append((a, b))
    return out


cdef inline int64_t _val(int64_t p, int64_t n):
    cdef int64_t v = 0
    if n == 0:
        return INF
    while n % p == 0:
        n //= p
        v += 1
    return v


cdef int _newton(int64_t p, int64_t m, int64_t a, int64_t b):
    cdef int64_t ys[5]
    cdef int64_t va = _val(p, a)
    cdef int64_t vb = _val(p, b)
    cdef int i = 0, j, best, length
    cdef int64_t drop
    cdef int n0 = 0, nhalf = 0, nfull = 0, other = 0
    ys[0] = 2 * m
    ys[1] = va + m if va < INF else INF
    ys[2] = vb
    ys[3] = va
    ys[4] = 0
    while i < 4:
        best = -1
        for j in range(i + 1, 5):
            if ys[j] >= INF:
                continue
            if best < 0:
                best = j
                continue
            if (ys[j] - ys[i]) * (best - i) <= (ys[best] - ys[i]) * (j - i):
                best = j
        drop = ys[i] - ys[best]
        length = best - i
        if drop == 0:
            n0 += length
        elif 2 * drop == m * length:
            nhalf += length
        elif drop == m * length:
            nfull += length
        else:
            other += length
        i = best
    if other:
        return 3
    if n0 == 2 and nfull == 2:
        return 0
    if nhalf == 4:
        return 2
    if n0 == 1 and nhalf == 2 and nfull == 1:
        return 1
    return 3


def newton_code(int64_t p, int64_t m, int64_t a, int64_t b):
    return _newton(p, m, a, b)


def classify_region(int64_t p, int64_t m, int64_t q):
    cdef int64_t amax = _isqrt(16 * q)
    cdef int64_t a, b, lo, hi, n = 0, k = 0
    for a in range(-amax, amax + 1):
        _b_range(q, a, &lo, &hi)
        if hi >= lo:
            n += hi - lo + 1
    aa = array("q", bytes(8 * n))
    bb = array("q", bytes(8 * n))
    cc = array("q", bytes(8 * n))
    cdef int64_t[:] av = aa
    cdef int64_t[:] bv = bb
    cdef int64_t[:] cv = cc
    for a in range(-amax, amax + 1):
        _b_range(q, a, &lo, &hi)
        for b in range(lo, hi + 1):
            av[k] = a
            bv[k] = b
            cv[k] = _newton(p, m, a, b)
            k += 1
    return aa, bb, cc
