"""Compare the compiled and numpy Monte Carlo kernels.

Usage: python3 bench/bench_backends.py [--samples N] [--repeat R]
"""
import argparse
import time

import numpy as np

from matnorm.montecarlo import MCConfig, available_backends, get_backend, mc_moment
from matnorm.montecarlo._rng import SPHERE_STREAM, stream_key


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = available_backends()
    key = stream_key(1, SPHERE_STREAM)
    rng = np.random.default_rng(0)
    print(f"backends: {', '.join(backends)}; samples per kernel call: {args.samples}")
    print(f"{'kernel':<28}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for n in (2, 4, 8):
        mats = np.ascontiguousarray(rng.normal(size=(2, n, n)) + 1j * rng.normal(size=(2, n, n)))
        A = mats[0]
        cases = {
            f"sphere_block n={n}": lambda m: m.sphere_block(n, key, 0, args.samples),
            f"simplex_block n={n}": lambda m: m.simplex_block(n, key, 0, args.samples),
            f"quad_forms_block n={n}": lambda m: m.quad_forms_block(mats, key, 0, args.samples),
            f"mc_moment abs-power n={n}": lambda m: mc_moment(
                "abs-power", (A, 3), MCConfig(args.samples, seed=1, backend=m.NAME)
            ),
        }
        for label, fn in cases.items():
            t = {b: best_of(lambda: fn(get_backend(b)), args.repeat) for b in backends}
            speed = f"{t['python'] / t['cython']:>9.1f}x" if "cython" in t else f"{'-':>10}"
            print(f"{label:<28}" + "".join(f"{t[b] * 1e3:>10.1f}ms" for b in backends) + speed)


if __name__ == "__main__":
    main()
