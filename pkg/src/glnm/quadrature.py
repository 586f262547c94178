"""Composite Simpson integration over a piecewise-uniform grid."""

from __future__ import annotations

import math

import numpy as np

from .grid import Grid


def _simpson_uniform(v, h):
    n = len(v) - 1
    if n <= 0:
        return 0.0
    m = n - (n % 2)
    total = 0.0
    if m:
        total = h / 3.0 * (v[0] + 4.0 * np.sum(v[1:m:2]) + 2.0 * np.sum(v[2 : m - 1 : 2]) + v[m])
    if n % 2:
        # trapezoid patch on the last interval
        total += 0.5 * h * (v[m] + v[n])
    return float(total)


def simpson(grid: Grid, values, stride: int = 1) -> float:
    """Integrate nodal ``values`` segment by segment.

    ``stride=2`` uses every other node of each segment, i.e. half the
    resolution; a leftover fine interval at a segment end is trapezoidal.
    """
    v = np.asarray(values, dtype=float)
    total = 0.0
    for seg, (a, b) in zip(grid.spec.segments, grid.bounds):
        idx = np.arange(a, b + 1, stride)
        total += _simpson_uniform(v[idx], seg.step * stride)
        if idx[-1] != b:
            total += 0.5 * (grid.nodes[b] - grid.nodes[idx[-1]]) * (v[idx[-1]] + v[b])
    return total


def weight_values(x, weight):
    """Evaluate a weight given as a power of ``x`` (int) or a callable."""
    x = np.asarray(x, dtype=float)
    if callable(weight):
        return np.asarray(weight(x), dtype=float) * np.ones_like(x)
    p = int(weight)
    return np.ones_like(x) if p == 0 else x**p


def exponential_tail(x_end, y_end, kappa, weight):
    """``integral_{x_end}^inf w(x) (y_end exp(-kappa (x - x_end)))^2 dx``."""
    if kappa <= 0.0 or y_end == 0.0:
        return 0.0
    two_k = 2.0 * kappa
    if callable(weight):
        return float(weight(np.array([x_end]))[0]) * y_end * y_end / two_k
    p = int(weight)
    s = math.fsum(math.comb(p, j) * x_end ** (p - j) * math.factorial(j) / two_k ** (j + 1) for j in range(p + 1))
    return y_end * y_end * s


def hermite_midpoints(grid: Grid, y, y_prime, y_second=None):
    """Values on the grid with every step halved.

    Original nodes keep their values.  Each new midpoint takes the Hermite
    interpolant of the two neighbours: quintic when second derivatives are
    given, cubic otherwise.
    """
    from .grid import build_grid

    y = np.asarray(y, dtype=float)
    yp = np.asarray(y_prime, dtype=float)
    fine = build_grid(grid.spec.scaled(2))
    h = np.diff(grid.nodes)
    out = np.empty(len(fine))
    out[::2] = y
    if y_second is None:
        out[1::2] = 0.5 * (y[:-1] + y[1:]) + h * (yp[:-1] - yp[1:]) / 8.0
    else:
        ypp = np.asarray(y_second, dtype=float)
        out[1::2] = 0.5 * (y[:-1] + y[1:]) + 5.0 * h * (yp[:-1] - yp[1:]) / 32.0 + h * h * (ypp[:-1] + ypp[1:]) / 64.0
    return fine, out
