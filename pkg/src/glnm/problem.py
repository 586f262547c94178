"""Sampled coefficient fields for ``y'' + g y' + f y = 0``.

Everything downstream consumes values on grid nodes only; callables are
evaluated exactly once, here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import FieldError
from .grid import Grid


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FieldSamples:
    """``g`` and ``f`` sampled on every node of ``grid``."""

    grid: Grid
    g: np.ndarray
    f: np.ndarray

    def __post_init__(self):
        g = _frozen(self.g)
        f = _frozen(self.f)
        n = len(self.grid)
        for name, arr in (("g", g), ("f", f)):
            if arr.shape != (n,):
                raise FieldError(f"{name} has shape {arr.shape}, expected ({n},)")
            bad = np.flatnonzero(~np.isfinite(arr))
            if bad.size:
                i = int(bad[0])
                raise FieldError(f"{name} is not finite at node {i} (x={self.grid.nodes[i]!r})")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "f", f)


def _evaluate(func, x, name):
    if not callable(func):
        arr = np.asarray(func, dtype=float)
        if arr.ndim == 1:
            if arr.shape != x.shape:
                raise FieldError(f"{name} has {arr.size} samples, grid has {x.size} nodes")
            func = lambda _x: arr  # noqa: E731
        else:
            value = float(arr)
            func = lambda _x: value  # noqa: E731
    with np.errstate(all="ignore"):
        try:
            out = np.asarray(func(x), dtype=float)
            if out.shape == ():
                out = np.full(x.shape, float(out))
        except (TypeError, ValueError, ZeroDivisionError):
            out = None
        if out is None or out.shape != x.shape:
            vals = []
            for xi in x:
                try:
                    vals.append(float(func(float(xi))))
                except (ZeroDivisionError, OverflowError, ValueError):
                    vals.append(math.nan)
            out = np.array(vals)
    bad = np.flatnonzero(~np.isfinite(out))
    if bad.size:
        i = int(bad[0])
        raise FieldError(f"{name}(x) is not finite at node {i} (x={x[i]!r})")
    return out


def sample_fields(grid: Grid, g, f) -> FieldSamples:
    """Evaluate the callables ``g`` and ``f`` on the nodes of ``grid``.

    Callables may be vectorised (accept an array) or scalar; a plain number
    is taken as a constant field and a 1-D array as samples at the nodes.
    """
    x = np.asarray(grid.nodes)
    return FieldSamples(grid, _evaluate(g, x, "g"), _evaluate(f, x, "f"))


@dataclass(frozen=True, eq=False)
class EffectiveMassModel:
    """Position-dependent mass ``m``, its derivative ``m_prime``, potential ``V`` and trial energy ``e``.

    The radial equation ``z'' - (m'/m) z' + 2m (e - V) z = 0`` has the
    form handled here once ``g = -m'/m`` and ``f = 2m(e - V)``.
    """

    m: np.ndarray
    m_prime: np.ndarray
    V: np.ndarray
    e: float = 0.0

    def __post_init__(self):
        m, mp, V = _frozen(self.m), _frozen(self.m_prime), _frozen(self.V)
        if not (m.shape == mp.shape == V.shape and m.ndim == 1):
            raise FieldError(f"m, m_prime, V shapes differ: {m.shape}, {mp.shape}, {V.shape}")
        for name, arr in (("m", m), ("m_prime", mp), ("V", V)):
            if not np.all(np.isfinite(arr)):
                raise FieldError(f"{name} has non-finite entries")
        bad = np.flatnonzero(m <= 0)
        if bad.size:
            raise FieldError(f"mass must be positive; m[{int(bad[0])}] = {m[bad[0]]!r}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "m_prime", mp)
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "e", float(self.e))


def mass_to_g(m, m_prime, g_extra=None):
    g = -np.asarray(m_prime) / np.asarray(m)
    if g_extra is not None:
        g = g + g_extra
    return g


def energy_to_f(m, V, e):
    return 2.0 * np.asarray(m) * (e - np.asarray(V))


def hf_map(model: EffectiveMassModel, grid: Grid, g_extra=None) -> FieldSamples:
    """Map an effective-mass model to ``g = -m'/m`` and ``f = 2m(e - V)``.

    ``g_extra`` is added to ``g``; radial equations written for ``R`` rather
    than ``rR`` use it for the geometric ``2/x`` term.
    """
    if len(model.m) != len(grid):
        raise FieldError(f"model has {len(model.m)} samples, grid has {len(grid)} nodes")
    return FieldSamples(grid, mass_to_g(model.m, model.m_prime, g_extra), energy_to_f(model.m, model.V, model.e))


# -- boundary seeds -------------------------------------------------------


@dataclass(frozen=True)
class PowerLawSeed:
    """Regular solution near the origin, ``y ~ x**exponent * (1 + linear * x)``."""

    exponent: float = 0.0
    linear: float = 0.0

    def __post_init__(self):
        if self.exponent < 0:
            raise FieldError(f"origin exponent must be >= 0, got {self.exponent!r}")

    def values(self, x0, x1):
        if x0 == 0.0:
            y0 = 1.0 if self.exponent == 0 else 0.0
        else:
            y0 = x0**self.exponent * (1.0 + self.linear * x0)
        y1 = x1**self.exponent * (1.0 + self.linear * x1)
        return y0, y1


@dataclass(frozen=True)
class TabulatedSeed:
    """User-supplied solution values at the two innermost nodes."""

    y0: float
    y1: float

    def values(self, x0, x1):
        return self.y0, self.y1


@dataclass(frozen=True)
class DecaySeed:
    """Tail ratio ``y_N / y_{N-1} = exp(-kappa h)`` with ``kappa = sqrt(max(-f_N, 0))``."""

    def kappa(self, f_last):
        return math.sqrt(max(-f_last, 0.0))

    def ratio(self, f_last, h):
        return math.exp(-self.kappa(f_last) * h)


@dataclass(frozen=True)
class FixedRatioSeed:
    """Tail ratio given directly; 0 is a hard wall (``y_N = 0``)."""

    value: float = 0.0

    def kappa(self, f_last):
        return 0.0

    def ratio(self, f_last, h):
        return self.value


@dataclass(frozen=True)
class BoundaryModel:
    origin: PowerLawSeed | TabulatedSeed = field(default_factory=PowerLawSeed)
    tail: DecaySeed | FixedRatioSeed = field(default_factory=DecaySeed)

    def origin_ratio(self, grid: Grid):
        """``y(x_0) / y(x_1)`` at the two innermost nodes."""
        y0, y1 = self.origin.values(float(grid.nodes[0]), float(grid.nodes[1]))
        if y1 == 0.0:
            raise FieldError("origin seed gives y(x_1) = 0")
        return y0 / y1

    def tail_ratio(self, fields: FieldSamples):
        """``y(x_N) / y(x_{N-1})`` at the outermost pair."""
        x = fields.grid.nodes
        return self.tail.ratio(float(fields.f[-1]), float(x[-1] - x[-2]))

    def tail_kappa(self, fields: FieldSamples):
        return self.tail.kappa(float(fields.f[-1]))
