"""Independent oracles: classic RK4, textbook Numerov, Bessel series.

Nothing here imports the stencil or propagation code, so agreement with
them is a genuine cross-check.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import PropagationError, ValidationError
from .propagate import SolutionSamples


def rk4_integrate(g, f, y0, y0_prime, x_start, x_stop, step) -> SolutionSamples:
    """March ``y'' = -g y' - f y`` as a first-order system with classic RK4.

    ``g`` and ``f`` are callables (or constants) because RK4 needs them at
    half steps.
    Nodes are ``x_start + k * step``; ``x_stop - x_start`` must be a whole
    number of steps.
    """
    n = round((x_stop - x_start) / step)
    if n < 1 or abs((x_stop - x_start) / step - n) > 1e-9 * n:
        raise ValidationError("range must be a positive whole number of steps")
    x = x_start + step * np.arange(n + 1)
    y = np.empty(n + 1)
    yp = np.empty(n + 1)
    y[0], yp[0] = y0, y0_prime

    gf = g if callable(g) else (lambda t, c=float(g): c)
    ff = f if callable(f) else (lambda t, c=float(f): c)

    def rhs(t, u, v):
        return v, -gf(t) * v - ff(t) * u

    u, v = float(y0), float(y0_prime)
    h = float(step)
    for k in range(n):
        t = x[k]
        k1u, k1v = rhs(t, u, v)
        k2u, k2v = rhs(t + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v)
        k3u, k3v = rhs(t + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v)
        k4u, k4v = rhs(t + h, u + h * k3u, v + h * k3v)
        u = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if not (math.isfinite(u) and math.isfinite(v)):
            raise PropagationError(f"RK4 state became non-finite at x={x[k + 1]!r}")
        y[k + 1], yp[k + 1] = u, v
    return SolutionSamples(y=y, y_prime=yp, x=x)


def numerov_classic(f_samples, h, y_start) -> SolutionSamples:
    """Textbook Numerov for ``y'' + f y = 0`` on a uniform mesh.

    ``y[n+1] = ((2 - 5 h^2 f[n] / 6) y[n] - (1 + h^2 f[n-1] / 12) y[n-1]) / (1 + h^2 f[n+1] / 12)``
    """
    f = np.asarray(f_samples, dtype=float)
    n = len(f)
    if n < 3:
        raise ValidationError("need at least three samples")
    y = np.empty(n)
    y[0], y[1] = y_start
    c0 = 5.0 * h * h / 6.0
    c1 = h * h / 12.0
    for k in range(1, n - 1):
        y[k + 1] = ((2.0 - c0 * f[k]) * y[k] - (1.0 + c1 * f[k - 1]) * y[k - 1]) / (1.0 + c1 * f[k + 1])
    return SolutionSamples(y=y)


def _bessel_series(x, order, terms):
    # sum_k (-1)^k (x/2)^(2k+order) / (k! (k+order)!)
    half = 0.5 * x
    term = half**order / math.factorial(order)
    parts = [term]
    sq = half * half
    for k in range(1, terms):
        term = -term * sq / (k * (k + order))
        parts.append(term)
    return math.fsum(parts)


def bessel_j0(x, terms=40):
    """``J0`` from its power series; intended for ``|x| <= 12``."""
    if abs(x) > 12:
        raise ValidationError("series oracle limited to |x| <= 12")
    return _bessel_series(float(x), 0, terms)


def bessel_j1(x, terms=40):
    if abs(x) > 12:
        raise ValidationError("series oracle limited to |x| <= 12")
    return _bessel_series(float(x), 1, terms)
