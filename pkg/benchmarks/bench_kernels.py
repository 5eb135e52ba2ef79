"""Compare the compiled kernels with their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported directly, so one run times both regardless of
NORMCOMPRESS_PURE. Results are checked for agreement before timing.
"""
import argparse
import time

import numpy as np

from normcompress import _kernels_py
from normcompress._backend import available


def hermitian_stack(batch, n, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((batch, n, n)) + 1j * rng.standard_normal((batch, n, n))
    return (a + np.conj(np.transpose(a, (0, 2, 1)))) / 2


def halfplanes(count, seed=1):
    rng = np.random.default_rng(seed)
    th = np.sort(rng.uniform(0, 2 * np.pi, count))
    return np.exp(1j * th), 1.0 + 0.01 * rng.standard_normal(count)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--batch", type=int, default=4096)
    ap.add_argument("--n", type=int, default=8)
    args = ap.parse_args()

    backends = available()
    compiled = backends.get("cython")
    stack = hermitian_stack(args.batch, args.n)
    normals, offsets = halfplanes(args.batch)
    square = 4 * np.array([1 - 1j, 1 + 1j, -1 + 1j, -1 - 1j])

    ref = np.linalg.eigvalsh(stack)
    rows = []
    for name, mod in (("python", _kernels_py), ("cython", compiled)):
        if mod is None:
            print(f"{name}: not built")
            continue
        vals, _ = mod.eigvalsh_batch(stack)
        err = float(np.max(np.abs(vals - ref)))
        t_eig = best_of(lambda: mod.eigvalsh_batch(stack), args.repeat)
        t_clip = best_of(lambda: mod.clip_convex(square, normals, offsets), args.repeat)
        rows.append((name, t_eig, t_clip, err))

    print(f"{'backend':8s} {'jacobi x' + str(args.batch):>14s} {'clip x' + str(args.batch):>12s} {'max |err|':>10s}")
    for name, te, tc, err in rows:
        print(f"{name:8s} {te:14.4f} {tc:12.4f} {err:10.2e}")
    if len(rows) == 2:
        print(f"speedup  {rows[0][1] / rows[1][1]:14.1f}x {rows[0][2] / rows[1][2]:11.1f}x")


if __name__ == "__main__":
    main()
