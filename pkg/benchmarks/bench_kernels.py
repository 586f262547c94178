"""Time the recurrence kernels compiled with numba against their Python source.

    python benchmarks/bench_kernels.py [--nodes 200000] [--repeat 5]

Each kernel runs on the same arrays both ways; outputs are checked for
bit-equality before timings are reported.  The per-kernel Python rows
run ``kernel.py_func``, which still calls the small compiled helpers.  The
end-to-end ``solve`` row is timed in a subprocess per backend
(``GLNM_DISABLE_NUMBA``), since the backend is fixed at import, so its
Python column is the pure fallback.
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from glnm import _accel, kernels
from glnm.grid import GridSpec, build_grid
from glnm.problem import sample_fields
from glnm.stencil import StencilTable


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def _cases(n):
    # power-of-two steps keep every segment an exact whole number of steps
    h = 2.0 ** -max(1, round(np.log2(n / 5.5)))
    grid = build_grid(GridSpec([(h, 1.0, h), (1.0, 10.0, 2 * h)]))
    fs = sample_fields(grid, lambda x: 2 / x, lambda x: -1.0 + 2 / x)
    T0, Tp, Tm = StencilTable(grid, fs.g).weights(fs.f)
    m = len(grid)
    left = grid.left

    def outward(fn):
        q, pole = np.full(m, np.nan), np.zeros(m, bool)
        fn(T0, Tp, Tm, left, 0.5, m - 2, q, pole)
        return q

    def inward(fn):
        r, pole = np.full(m, np.nan), np.zeros(m, bool)
        fn(T0, Tp, Tm, left, 0.99, 1, r, pole)
        return r

    def values(fn):
        y = np.full(m, np.nan)
        y[0], y[1] = 1.0, 1.0 + h
        fn(T0, Tp, Tm, left, y, 0, m - 1)
        return y

    return m, [
        ("outward_ratios", kernels.outward_ratios, outward),
        ("inward_ratios", kernels.inward_ratios, inward),
        ("outward_values", kernels.outward_values, values),
    ]


SOLVE_SNIPPET = (
    "import time, glnm;"
    "p = glnm.builtin_problem('hydrogen_R').eigen_problem(1);"
    "glnm.solve(p);"
    "t0 = time.perf_counter();"
    "[glnm.solve(p) for _ in range({r})];"
    "print((time.perf_counter() - t0) / {r})"
)


def _solve_time(disable, repeat):
    env = dict(os.environ, GLNM_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run(
        [sys.executable, "-c", SOLVE_SNIPPET.format(r=repeat)], env=env, capture_output=True, text=True, check=True
    )
    return float(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help="print results as JSON")
    args = ap.parse_args(argv)

    if not _accel.USE_NUMBA:
        sys.exit("numba is disabled or missing; nothing to compare")

    n, cases = _cases(args.nodes)
    rows = []
    for name, kern, run in cases:
        a = run(kern)  # also triggers compilation
        b = run(kern.py_func)
        if not np.array_equal(a, b, equal_nan=True):
            sys.exit(f"{name}: numba and python outputs differ")
        t_nb = _best(lambda: run(kern), args.repeat)
        t_py = _best(lambda: run(kern.py_func), max(1, args.repeat // 2))
        rows.append({"kernel": name, "nodes": n, "numba_s": t_nb, "python_s": t_py, "speedup": t_py / t_nb})
    t_nb = _solve_time(False, args.repeat)
    t_py = _solve_time(True, max(1, args.repeat // 2))
    rows.append({"kernel": "solve(hydrogen_R, 2s)", "nodes": 9980, "numba_s": t_nb, "python_s": t_py, "speedup": t_py / t_nb})

    if args.json:
        print(json.dumps(rows, indent=1))
        return
    print(f"{'kernel':24s} {'nodes':>8s} {'numba [ms]':>11s} {'python [ms]':>12s} {'speedup':>8s}")
    for r in rows:
        print(f"{r['kernel']:24s} {r['nodes']:8d} {1e3 * r['numba_s']:11.2f} {1e3 * r['python_s']:12.1f} {r['speedup']:7.0f}x")


if __name__ == "__main__":
    main()
