"""Row reduction mod p: numba kernel vs numpy fallback.

    python benchmarks/bench_rref.py [--sizes 50 200 400] [--p 3] [--repeat 5]
"""
import argparse
import time

import numpy as np

from loopcoh import _kernels


def bench(M, p, use_numba, repeat):
    best = float("inf")
    for _ in range(repeat):
        a = M.copy()
        t = time.perf_counter()
        _kernels.rref_inplace(a, p, use_numba=use_numba)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 50, 100, 200, 400])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(1)
    # warm up the jit so compile time is not counted
    _kernels.rref_inplace(rng.integers(0, args.p, (4, 4)), args.p, use_numba=True)

    print(f"{'n':>6} {'numba (ms)':>12} {'numpy (ms)':>12} {'speedup':>8}")
    for n in args.sizes:
        M = rng.integers(0, args.p, (n, n)).astype(np.int64)
        a, b = M.copy(), M.copy()
        ra = _kernels.rref_inplace(a, args.p, use_numba=True)
        rb = _kernels.rref_inplace(b, args.p, use_numba=False)
        assert ra == rb and np.array_equal(a, b), "paths disagree"
        tn = bench(M, args.p, True, args.repeat)
        tp = bench(M, args.p, False, args.repeat)
        print(f"{n:>6} {tn * 1e3:>12.3f} {tp * 1e3:>12.3f} {tp / tn:>8.1f}")


if __name__ == "__main__":
    main()
