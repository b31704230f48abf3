"""Compare the compiled evaluator kernels against the pure-Python twin.

Usage:
    python benchmarks/bench_kernels.py [--grid 800x801] [--repeats 5]

Times `sample_rows` (the per-row grid evaluator behind `stripsurf eval`
and the acceptance grid audit) for each map kind on both backends and
reports throughput plus speedup.  Runs fine without the extension; it
then only reports the pure-Python numbers.
"""

import argparse
import re
import time

from stripsurf import _kernels_py

try:
    from stripsurf import _kernels
except ImportError:
    _kernels = None

KINDS = [("raw", _kernels_py.RAW), ("banded", _kernels_py.BANDED), ("chain", _kernels_py.CHAIN)]


def parse_grid(text):
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if not m:
        raise SystemExit(f"--grid expects NXxNY, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def best_time(module, kind, xs, ys, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        module.sample_rows(kind, xs, ys)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", default="800x801")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    nx, ny = parse_grid(args.grid)
    xs = [-10.0 + i * 20.0 / (nx - 1) for i in range(nx)]
    ys = [-0.999 + j * 1.998 / (ny - 1) for j in range(ny)]
    points = nx * ny

    print(f"grid {nx}x{ny} ({points} points), best of {args.repeats}")
    if _kernels is None:
        print("compiled extension not built; timing the pure backend only")
    header = f"{'map':8s} {'python':>12s} {'cython':>12s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, kind in KINDS:
        py_t = best_time(_kernels_py, kind, xs, ys, args.repeats)
        py_rate = points / py_t / 1e6
        if _kernels is not None:
            cy_t = best_time(_kernels, kind, xs, ys, args.repeats)
            cy_rate = points / cy_t / 1e6
            print(f"{name:8s} {py_rate:9.2f} M/s {cy_rate:9.2f} M/s {py_t / cy_t:7.1f}x")
        else:
            print(f"{name:8s} {py_rate:9.2f} M/s {'-':>12s} {'-':>8s}")

    if _kernels is not None:
        sample = [(xs[i % nx], ys[i % ny]) for i in range(0, points, max(points // 1000, 1))]
        worst = max(
            abs(_kernels.merge_banded_x(x, y) - _kernels_py.merge_banded_x(x, y))
            for x, y in sample
        )
        print(f"max |cython - python| on {len(sample)} spot checks: {worst:.1e}")


if __name__ == "__main__":
    main()
