"""Coefficients of the generalized three-point Numerov recurrence.

For ``y'' + g y' + f y = 0`` on a uniform triple ``x0 - h, x0, x0 + h``::

    T0 y0 = T+ y+ + T- y-          (local error O(h^6))
    y0'   = (S+ y+ - S- y- - S0 y0) / (2 a h)   (local error O(h^4))

The same expressions serve scalars and numpy arrays.  Operand grouping is
fixed so that the ``g = 0`` case reduces bit-for-bit to the classic Numerov
weights and so that mirroring the triple (swap the ``+``/``-`` sides and
negate ``g``) swaps ``T+``/``T-`` and ``S+``/``S-`` exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import StencilError, ValidationError

RECURRENCE_ORDER = 6
DERIVATIVE_ORDER = 4
SINGULAR_A = 1e-12


@dataclass(frozen=True)
class LocalFields:
    h: float
    g_minus: float
    g_zero: float
    g_plus: float
    f_minus: float
    f_zero: float
    f_plus: float

    def __post_init__(self):
        vals = (self.h, self.g_minus, self.g_zero, self.g_plus, self.f_minus, self.f_zero, self.f_plus)
        if not all(math.isfinite(v) for v in vals):
            raise ValidationError(f"local fields must be finite: {vals}")
        if not self.h > 0:
            raise ValidationError(f"step must be positive, got {self.h!r}")

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(*(float(d[k]) for k in ("h", "g_minus", "g_zero", "g_plus", "f_minus", "f_zero", "f_plus")))
        except KeyError as exc:
            raise ValidationError(f"missing local field {exc}") from None


@dataclass(frozen=True)
class StencilCoefficients:
    T0: float
    T_plus: float
    T_minus: float
    a: float
    b0: float
    b_plus: float
    b_minus: float
    c: float
    truncation_order: int = RECURRENCE_ORDER


@dataclass(frozen=True)
class DerivativeStencil:
    S0: float
    S_plus: float
    S_minus: float
    a: float
    truncation_order: int = DERIVATIVE_ORDER


def g_parts(h, gm, g0, gp):
    """Energy-independent auxiliaries ``(a, b0, b+, b-, c, A+, A-)``.

    ``A+`` and ``A-`` are the ``g``-only parts of ``T+`` and ``T-``.
    """
    h3 = h / 3.0
    a = (1.0 + h3 * gp) * (1.0 - h3 * gm) + (h * h / 18.0) * (g0 * (gp + gm))
    k = 4.0 * h / 15.0
    q = h / 15.0
    b0 = (1.0 + k * gp) * (1.0 - k * gm) + (q * q) * (gp * gm)
    k = 5.0 * h / 6.0
    b_plus = (1.0 + k * g0) * (1.0 - h3 * gm) + (h3 * h3) * (g0 * gm)
    b_minus = (1.0 - k * g0) * (1.0 + h3 * gp) + (h3 * h3) * (g0 * gp)
    k = 7.0 * h / 20.0
    q = 3.0 * h / 20.0
    c = (1.0 + k * gp) * (1.0 - k * gm) + (q * q) * (gp * gm)
    s = (h / 24.0) * (10.0 * c * g0 + (gp + gm))
    return a, b0, b_plus, b_minus, c, a + s, a - s


def t_weights(h, parts, fm, f0, fp):
    """Combine cached ``g_parts`` with ``f`` samples into ``(T0, T+, T-)``."""
    a, b0, b_plus, b_minus, _c, A_plus, A_minus = parts
    # grouped like the textbook weights so g = 0 reproduces them bit for bit
    c0 = 5.0 * h * h / 6.0
    c1 = h * h / 12.0
    T0 = 2.0 * a - c0 * b0 * f0
    T_plus = A_plus + c1 * b_plus * fp
    T_minus = A_minus + c1 * b_minus * fm
    return T0, T_plus, T_minus


def s_parts(h, gm, gp):
    """``g``-only part of ``S+``/``S-`` and the ``f`` multipliers ``(Sg, C+, C-)``."""
    k = 5.0 * h / 12.0
    q = h / 12.0
    Sg = (1.0 + k * gp) * (1.0 - k * gm) + (q * q) * (gp * gm)
    h3 = h / 3.0
    hh6 = h * h / 6.0
    return Sg, hh6 * (1.0 - h3 * gm), hh6 * (1.0 + h3 * gp)


def s_weights(h, gm, gp, fm, f0, fp):
    """``(S0, S+, S-)`` of the interior derivative formula."""
    Sg, C_plus, C_minus = s_parts(h, gm, gp)
    S0 = (h * h * h / 9.0) * ((gp + gm) * f0)
    return S0, Sg + C_plus * fp, Sg + C_minus * fm


def recurrence_coefficients(lf: LocalFields) -> StencilCoefficients:
    parts = g_parts(lf.h, lf.g_minus, lf.g_zero, lf.g_plus)
    T0, Tp, Tm = t_weights(lf.h, parts, lf.f_minus, lf.f_zero, lf.f_plus)
    a, b0, bp, bm, c, _, _ = parts
    return StencilCoefficients(T0, Tp, Tm, a, b0, bp, bm, c)


def derivative_coefficients(lf: LocalFields) -> DerivativeStencil:
    a = g_parts(lf.h, lf.g_minus, lf.g_zero, lf.g_plus)[0]
    if abs(a) < SINGULAR_A:
        raise StencilError(f"singular derivative stencil: |a| = {abs(a):.3g} (step {lf.h!r} too large for g)")
    S0, Sp, Sm = s_weights(lf.h, lf.g_minus, lf.g_plus, lf.f_minus, lf.f_zero, lf.f_plus)
    return DerivativeStencil(S0, Sp, Sm, a)


class StencilTable:
    """Per-node ``g``-dependent stencil parts for one grid and one ``g``.

    Eigenvalue scans keep ``g`` fixed and vary only ``f``; :meth:`weights`
    recombines the cached parts with new ``f`` samples.  Arrays are full
    grid length; endpoint entries are NaN.
    """

    def __init__(self, grid, g):
        self.grid = grid
        n = len(grid)
        g = np.asarray(g, dtype=float)
        self.inner = np.arange(1, n - 1)
        self.im = np.asarray(grid.left[1 : n - 1])
        self.ip = self.inner + 1
        self.h = np.asarray(grid.step[1 : n - 1])
        self._parts = g_parts(self.h, g[self.im], g[self.inner], g[self.ip])
        self.a = self._full(self._parts[0])
        self._sparts = s_parts(self.h, g[self.im], g[self.ip])
        self._gsum = g[self.ip] + g[self.im]

    def _full(self, inner_vals):
        out = np.full(len(self.grid), np.nan)
        out[1:-1] = inner_vals
        return out

    def weights(self, f):
        """``(T0, T+, T-)`` for field samples ``f`` (full-length arrays)."""
        f = np.asarray(f, dtype=float)
        T0, Tp, Tm = t_weights(self.h, self._parts, f[self.im], f[self.inner], f[self.ip])
        return self._full(T0), self._full(Tp), self._full(Tm)

    def derivative_weights(self, f):
        """``(S0, S+, S-)`` for field samples ``f`` (full-length arrays)."""
        f = np.asarray(f, dtype=float)
        Sg, C_plus, C_minus = self._sparts
        S0 = (self.h * self.h * self.h / 9.0) * (self._gsum * f[self.inner])
        return self._full(S0), self._full(Sg + C_plus * f[self.ip]), self._full(Sg + C_minus * f[self.im])
