"""Compare the numba and numpy kernels for the plethysm hot paths.

Run with ``python3 benchmarks/bench_kernels.py``. The first numba call per
signature is timed separately as compile (or cache load) time.
"""

import argparse
import random
import time

import numpy as np

from chernpos import _accel
from chernpos import plethysm as pl

PHI_CASES = [(6, 1), (4, 2), (3, 4)]
GL_CASES = [(4, 2), (3, 3)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_phi(repeat):
    rows = []
    for r, a in PHI_CASES:
        results = {}
        for backend in ("numpy", "numba"):
            if backend == "numba" and not _accel.HAVE_NUMBA:
                continue
            best, dense = best_of(lambda: pl.phi_dense(r, a, backend=backend), repeat)
            results[backend] = (best, dense)
        ref = next(iter(results.values()))[1]
        assert all(np.array_equal(ref, d) for _, d in results.values())
        rows.append(("phi_dense", f"r={r} a={a}", pl.tableau_count(r, a), results))
    return rows


def bench_gl(repeat):
    rows = []
    rng = random.Random(0)
    for r, a in GL_CASES:
        W = pl.phi_image(r, a)
        g = pl.random_unimodular(r, rng)
        results = {}
        for backend in ("numpy", "numba"):
            if backend == "numba" and not _accel.HAVE_NUMBA:
                continue
            best, out = best_of(lambda: pl.apply_gl(W, g, backend), repeat)
            results[backend] = (best, out)
        assert all(o == W for _, o in results.values())
        rows.append(("apply_gl", f"r={r} a={a}", len(W.terms), results))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _accel.HAVE_NUMBA:
        t0 = time.perf_counter()
        pl.phi_dense(2, 1, backend="numba")
        pl.apply_gl(pl.phi_image(2, 1), [[1, 1], [0, 1]], "numba")
        print(f"numba warmup (compile or cache load): {time.perf_counter() - t0:.2f}s")

    print(f"{'kernel':<10} {'case':<10} {'size':>10} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for name, case, size, res in bench_phi(args.repeat) + bench_gl(args.repeat):
        t_np = res["numpy"][0]
        t_nb = res.get("numba", (float("nan"),))[0]
        print(f"{name:<10} {case:<10} {size:>10} {t_np:>10.3f} {t_nb:>10.3f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
