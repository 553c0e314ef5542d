"""Benchmark the compiled Jacobi eigensolver against the NumPy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from tecost._kernels import BACKEND, _fallback

try:
    from tecost._kernels import _jacobi
except ImportError:
    _jacobi = None


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (M + M.conj().T) / 2


def bench(fun, mats, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for H in mats:
            fun(H)
        best = min(best, time.perf_counter() - t0)
    return best / len(mats)


def main():
    print("active backend: %s" % BACKEND)
    if _jacobi is None:
        print("compiled kernel unavailable; timing the fallback only")
    sizes = [2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64]
    header = "%6s %14s %14s %10s %12s" % (
        "n", "compiled (us)", "numpy (us)", "ratio", "max |dw|")
    print(header)
    print("-" * len(header))
    for n in sizes:
        mats = [np.array(random_hermitian(n, s)) for s in range(max(4, 256 // n))]
        repeats = 3
        t_py = bench(_fallback.eigh_raw, mats, repeats)
        if _jacobi is not None:
            t_cy = bench(_jacobi.jacobi_eigh, mats, repeats)
            dev = 0.0
            for H in mats:
                wc, _ = _jacobi.jacobi_eigh(H)
                wp, _ = _fallback.eigh_raw(H)
                dev = max(dev, float(np.abs(np.sort(np.asarray(wc)) - np.sort(wp)).max()))
            print("%6d %14.1f %14.1f %10.2f %12.1e"
                  % (n, t_cy * 1e6, t_py * 1e6, t_cy / t_py, dev))
        else:
            print("%6d %14s %14.1f %10s %12s" % (n, "-", t_py * 1e6, "-", "-"))


if __name__ == "__main__":
    main()
