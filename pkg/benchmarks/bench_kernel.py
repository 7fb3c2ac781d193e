"""Compare the GMP extension kernel with the pure-Python fallback.

    python benchmarks/bench_kernel.py [--repeat 3]

Prints the time per call of the nested polylogarithm sum at a few
(depth, precision) points, then an end-to-end explicit-formula sweep at
30 and 100 digits with each backend.
"""

import argparse
import time

from mzvkit import kernel, numerics
from mzvkit._lisum_py import nested_sum_half as py_sum
from mzvkit.numerics import MZVCache, _terms_needed
from mzvkit.verify import verify_thm1

CASES = [((2,), 200), ((1, 1, 2), 200), ((1,) * 6 + (2,), 400), ((1,) * 10 + (2,), 800), ((3,) * 4, 1600)]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def sweep(digits, max_sum):
    cache = MZVCache()
    numerics._li_fixed.cache_clear()
    for r in range(1, max_sum):
        for k in range(1, max_sum - r + 1):
            assert verify_thm1(r, k, digits, cache=cache).passed


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = kernel.nested_sum_half
    print(f"selected backend: {kernel.BACKEND}")
    if kernel.BACKEND != "gmp":
        print("extension not built; only the fallback is available")
    print(f"{'parts':<38}{'bits':>6}{'terms':>7}{'gmp ms':>10}{'python ms':>11}{'speedup':>9}")
    for parts, bits in CASES:
        n = _terms_needed(len(parts), bits)
        assert fast(parts, n, bits) == py_sum(parts, n, bits)
        tf = best_of(lambda: fast(parts, n, bits), args.repeat)
        tp = best_of(lambda: py_sum(parts, n, bits), args.repeat)
        print(f"{str(parts):<38}{bits:>6}{n:>7}{tf * 1e3:>10.2f}{tp * 1e3:>11.2f}{tp / tf:>8.1f}x")
    for digits, max_sum in [(30, 12), (100, 12)]:
        times = {}
        for name, fn in [("gmp", fast), ("python", py_sum)]:
            kernel.nested_sum_half = fn
            times[name] = best_of(lambda: sweep(digits, max_sum), 1)
        kernel.nested_sum_half = fast
        print(f"thm1 sweep r+k<={max_sum} at {digits} digits: gmp {times['gmp']:.2f} s, "
              f"python {times['python']:.2f} s ({times['python'] / times['gmp']:.1f}x)")


if __name__ == "__main__":
    main()
