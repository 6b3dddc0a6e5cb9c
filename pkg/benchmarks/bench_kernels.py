"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--q 4093] [--repeat 3]

Each kernel is timed on identical inputs through both implementations and
the outputs are compared before the timings are reported.
"""
import argparse
import random
import sys
import timeit

from polarizability import _pykernels as py
from polarizability.intkernel import prime_power_decompose

try:
    from polarizability import _ckernels as cy
except ImportError:
    cy = None


def cases(q, seed):
    qp = prime_power_decompose(q)
    rng = random.Random(seed)
    nums = [rng.randrange(2, 10**12) for _ in range(2000)]
    pairs = [(rng.randrange(-10**9, 10**9), 2 * rng.randrange(1, 10**9) + 1) for _ in range(20000)]
    return {
        "scan_valid": lambda k: k.scan_valid(q),
        "classify_region": lambda k: k.classify_region(qp.p, qp.m, q),
        "trial_divide": lambda k: [k.trial_divide(n, 10**4) for n in nums],
        "kronecker": lambda k: [k.kronecker(a, n) for a, n in pairs],
        "on_circle": lambda k: [k.on_circle(q, a, b) for a in range(-40, 41) for b in range(-2 * q, 2 * q, 7)],
    }


def _norm(out):
    if isinstance(out, tuple):
        return tuple(list(x) for x in out)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=4093)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'kernel':<16}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name, fn in cases(args.q, args.seed).items():
        if _norm(fn(py)) != _norm(fn(cy)):
            print(f"{name}: outputs differ", file=sys.stderr)
            return 1
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:<16}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
