"""Kernel selection.

The compiled ``_ckernels`` extension is used when it imports and the inputs
fit its int64 envelope; everything else goes through ``_pykernels``.  Set
``POLARIZABILITY_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels as pykernels

try:
    if os.environ.get("POLARIZABILITY_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend forced")
    from . import _ckernels as ckernels
except ImportError:
    ckernels = None

BACKEND = "cython" if ckernels is not None else "python"

# q <= 2**28 keeps 64*q**2 and (6q)**2 below 2**63
_Q_LIMIT = 1 << 28
_INT_LIMIT = 1 << 62


def _fast(*values, limit=_INT_LIMIT):
    return ckernels is not None and all(-limit < v < limit for v in values)


def trial_divide(n, bound):
    if _fast(n, bound):
        return ckernels.trial_divide(n, bound)
    return pykernels.trial_divide(n, bound)


def kronecker(a, n):
    if _fast(a, n):
        return ckernels.kronecker(a, n)
    return pykernels.kronecker(a, n)


def on_circle(q, a, b):
    if _fast(q, limit=_Q_LIMIT) and _fast(a, b, limit=64 * _Q_LIMIT):
        return ckernels.on_circle(q, a, b)
    return pykernels.on_circle(q, a, b)


def valid_b_range(q, a):
    if _fast(q, limit=_Q_LIMIT) and _fast(a, limit=64 * _Q_LIMIT):
        return ckernels.valid_b_range(q, a)
    return pykernels.valid_b_range(q, a)


def scan_valid(q):
    if _fast(q, limit=_Q_LIMIT):
        return ckernels.scan_valid(q)
    return pykernels.scan_valid(q)


def newton_code(p, m, a, b):
    if _fast(p, m, a, b):
        return ckernels.newton_code(p, m, a, b)
    return pykernels.newton_code(p, m, a, b)


def classify_region(p, m, q):
    if _fast(q, limit=_Q_LIMIT):
        return ckernels.classify_region(p, m, q)
    return pykernels.classify_region(p, m, q)
