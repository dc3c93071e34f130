"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_backends.py [--repeat 5]

Times the three hot loops (Airy evaluation, Airy kernel assembly, the
Hermite recurrence) plus a full log-determinant, and checks that both
backends agree on every output.
"""

import argparse
import time

import numpy as np

from airydet import _backend, detasym, operator_disc, symbols


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    x_airy = np.linspace(-60.0, 30.0, 200_000)
    f = symbols.gauss(-0.5)
    grid = operator_disc.default_airy_grid(f, 16.0)
    x_k = np.ascontiguousarray(grid.nodes)
    x_h = np.linspace(-100.0, 100.0, 2000)
    return [
        ("airy_pair, 2e5 points", lambda m: m.airy_pair(x_airy)),
        (f"airy kernel matrix, {x_k.size}^2", lambda m: m.airy_kernel_matrix(x_k, x_k, 1e-6)),
        ("hermite recurrence n=4000, 2000 points", lambda m: m.hermite_tail(4000, x_h)),
        ("hermite table n=200, 2000 points", lambda m: m.hermite_table(200, x_h)),
        ("CD kernel n=1000, 400^2", lambda m: m.cd_kernel_matrix(1000, x_h[::5], x_h[::5], 1e-6)),
    ]


def max_diff(a, b):
    if isinstance(a, tuple):
        return max(max_diff(u, v) for u, v in zip(a, b))
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    if _backend.compiled is None:
        raise SystemExit("compiled extension not available; build with `pip install -e . --no-build-isolation`")
    print(f"{'case':42s} {'numpy [ms]':>11s} {'cython [ms]':>12s} {'speedup':>8s} {'max diff':>10s}")
    for name, fn in cases():
        tp, op = best_of(lambda: fn(_backend.pure), args.repeat)
        tc, oc = best_of(lambda: fn(_backend.compiled), args.repeat)
        print(f"{name:42s} {1e3 * tp:11.2f} {1e3 * tc:12.2f} {tp / tc:8.2f} {max_diff(op, oc):10.1e}")

    # end to end: the LU factorisation is shared, so the gap narrows
    f = symbols.gauss(-0.5)
    t, _ = best_of(lambda: detasym.airy_log_det(f, 16.0), args.repeat)
    print(f"\nfull log det at alpha=16 with the active backend ({_backend.NAME}): {1e3 * t:.1f} ms")


if __name__ == "__main__":
    main()
