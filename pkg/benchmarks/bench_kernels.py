"""Time the hot kernels under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Cases: Cayley-graph BFS of D(7) (322560 elements) and the weighted action sum
building the D(5) symmetrizer on (C^3)^{(x)5}. The first numba call includes
JIT compilation (or cache loading) and is reported separately.
"""

import argparse
import time

import numpy as np

from fockd import kernels, use_backend
from fockd._backend import HAVE_NUMBA
from fockd.coxeter import enumerate_group, generators


def _time(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    gens = np.array([g.window for g in generators("D", 7)])
    table = enumerate_group("D", 5)
    weights = 0.4 ** table.lengths.astype(float)
    inv = np.eye(3)[::-1].astype(complex)
    cases = {
        "bfs D(7)": lambda: kernels.bfs_lengths(gens, 7),
        "symmetrizer D(5), d=3": lambda: kernels.action_sum(table.windows, weights, inv),
    }
    backends = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]
    print(f"{'case':<24}{'backend':<8}{'first (s)':>12}{'best (s)':>12}")
    results = {}
    for name, fn in cases.items():
        for b in backends:
            with use_backend(b):
                first = _time(fn, 1)
                best = _time(fn, args.repeat)
            results[(name, b)] = fn
            print(f"{name:<24}{b:<8}{first:>12.3f}{best:>12.3f}")
    if HAVE_NUMBA:
        for name, fn in cases.items():
            with use_backend("numba"):
                a = fn()
            with use_backend("numpy"):
                b = fn()
            same = all(np.allclose(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.allclose(a, b)
            print(f"{name}: backends agree = {same}")


if __name__ == "__main__":
    main()
