"""Pure-Python hot kernels.

Reference implementation of every routine in ``_ckernels.pyx``.  The two
modules expose identical signatures; ``_backend`` picks one at import.
"""
from array import array
from math import isqrt

NEWTON_ORDINARY = 0
NEWTON_MIXED = 1
NEWTON_SUPERSINGULAR = 2
NEWTON_NONSYMMETRIC = 3

_INF = 1 << 40

_SMALL_PRIMES = []


def _small_primes():
    if not _SMALL_PRIMES:
        limit = 1_000_000
        sieve = bytearray([1]) * (limit + 1)
        sieve[0] = sieve[1] = 0
        for i in range(2, isqrt(limit) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
        _SMALL_PRIMES.extend(i for i in range(limit + 1) if sieve[i])
    return _SMALL_PRIMES


def _probable_prime(n):
    # strong base-2 test only; used as an early exit, never as a verdict
    if n < 4:
        return n > 1
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    x = pow(2, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def trial_divide(n, bound):
    """Strip prime factors p <= bound from n > 0.

    Returns ``(factors, rest)`` with factors a list of (p, e), p increasing.
    A leftover ``rest > 1`` is either prime or free of prime factors below
    1000; the caller settles it with Miller-Rabin and Pollard rho.
    """
    factors = []
    for p in _small_primes():
        if p > bound or p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        elif p == 997 and n > 1 and _probable_prime(n):
            break
    return factors, n


def kronecker(a, n):
    """Kronecker symbol (a|n) for integers, (0|0) excluded by the caller."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    v = 0
    while not n & 1:
        n >>= 1
        v += 1
    if v:
        if not a & 1:
            return 0
        if v & 1 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while not a & 1:
            a >>= 1
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def on_circle(q, a, b):
    if a * a > 16 * q:
        return False
    if a * a - 4 * b + 8 * q < 0:
        return False
    t = b + 2 * q
    return t >= 0 and t * t >= 4 * a * a * q


def valid_b_range(q, a):
    """Inclusive (lo, hi) such that on_circle(q, a, b) iff lo <= b <= hi."""
    r = isqrt(4 * a * a * q)
    if r * r < 4 * a * a * q:
        r += 1
    lo = r - 2 * q
    hi = (a * a + 8 * q) // 4
    return lo, hi


def scan_valid(q):
    out = []
    amax = isqrt(16 * q)
    for a in range(-amax, amax + 1):
        lo, hi = valid_b_range(q, a)
        for b in range(lo, hi + 1):
            out.append((a, b))
    return out


def _val(p, n):
    if n == 0:
        return _INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def newton_code(p, m, a, b):
    va = _val(p, a)
    vb = _val(p, b)
    ys = (2 * m, va + m if va < _INF else _INF, vb, va, 0)
    i = 0
    n0 = nhalf = nfull = other = 0
    while i < 4:
        best = -1
        for j in range(i + 1, 5):
            if ys[j] >= _INF:
                continue
            if best < 0:
                best = j
                continue
            # slope(i,j) <= slope(i,best): take the furthest point on ties
            lhs = (ys[j] - ys[i]) * (best - i)
            rhs = (ys[best] - ys[i]) * (j - i)
            if lhs <= rhs:
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
        return NEWTON_NONSYMMETRIC
    if n0 == 2 and nfull == 2:
        return NEWTON_ORDINARY
    if nhalf == 4:
        return NEWTON_SUPERSINGULAR
    if n0 == 1 and nhalf == 2 and nfull == 1:
        return NEWTON_MIXED
    return NEWTON_NONSYMMETRIC


def classify_region(p, m, q):
    """All valid (a, b) for q with their Newton codes, as three int64 arrays."""
    aa, bb, cc = array("q"), array("q"), array("q")
    amax = isqrt(16 * q)
    for a in range(-amax, amax + 1):
        lo, hi = valid_b_range(q, a)
        for b in range(lo, hi + 1):
            aa.append(a)
            bb.append(b)
            cc.append(newton_code(p, m, a, b))
    return aa, bb, cc
