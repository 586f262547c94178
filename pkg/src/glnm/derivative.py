"""First derivative of a grid solution.

Interior nodes use the four-point-accurate three-point formula
``y0' = (S+ y+ - S- y- - S0 y0) / (2 a h)``.  Endpoints use the one-sided
relation between the derivatives at a triple,

    (3 + h g+) y+' = (3 - h g-) y-' - h (4 g0 y0' + 4 f0 y0 + f+ y+ + f- y-),

centred on the node next to the endpoint and fed with interior values.
"""

from __future__ import annotations

import numpy as np

from .errors import StencilError, ValidationError
from .problem import FieldSamples
from .propagate import SolutionSamples
from .stencil import SINGULAR_A, LocalFields, StencilTable, derivative_coefficients

ENDPOINT_TOL = 1e-12


def _values(y):
    return np.asarray(y.y if isinstance(y, SolutionSamples) else y, dtype=float)


def _local(fields, i):
    grid = fields.grid
    L = int(grid.left[i])
    g, f = fields.g, fields.f
    return L, LocalFields(float(grid.step[i]), g[L], g[i], g[i + 1], f[L], f[i], f[i + 1])


def derivative_interior(fields: FieldSamples, y, i: int) -> float:
    """``y'`` at interior node ``i``.

    At a segment boundary the stencil uses the coarse spacing, whose left
    neighbour is a node of the finer segment.
    """
    n = len(fields.grid)
    if not 1 <= i <= n - 2:
        raise ValidationError(f"node {i} is not interior (grid has {n} nodes)")
    yv = _values(y)
    L, lf = _local(fields, i)
    st = derivative_coefficients(lf)
    return (st.S_plus * yv[i + 1] - st.S_minus * yv[L] - st.S0 * yv[i]) / (2.0 * st.a * lf.h)


def derivative_endpoint(fields: FieldSamples, y, y_prime_inner: float, y_prime_center: float, side: str) -> float:
    """``y'`` at the left or right endpoint.

    ``y_prime_center`` is the derivative at the node next to the endpoint;
    ``y_prime_inner`` the one at the far node of that node's stencil.
    """
    grid = fields.grid
    n = len(grid)
    yv = _values(y)
    g, f = fields.g, fields.f
    if side == "left":
        c = 1
    elif side == "right":
        c = n - 2
    else:
        raise ValidationError(f"side must be 'left' or 'right', got {side!r}")
    L = int(grid.left[c])
    h = float(grid.step[c])
    inner = h * (4.0 * g[c] * y_prime_center + 4.0 * f[c] * yv[c] + f[c + 1] * yv[c + 1] + f[L] * yv[L])
    if side == "left":
        if L != 0:
            raise ValidationError("left endpoint stencil is not uniform")
        den = 3.0 - h * g[L]
        if abs(den) < ENDPOINT_TOL:
            raise StencilError("3 - h g_- vanishes at the left endpoint")
        return ((3.0 + h * g[c + 1]) * y_prime_inner + inner) / den
    den = 3.0 + h * g[c + 1]
    if abs(den) < ENDPOINT_TOL:
        raise StencilError("3 + h g_+ vanishes at the right endpoint")
    return ((3.0 - h * g[L]) * y_prime_inner - inner) / den


def derivatives(fields: FieldSamples, y, table: StencilTable | None = None) -> np.ndarray:
    """``y'`` at every node: interior formula inside, endpoint formula at both ends."""
    grid = fields.grid
    n = len(grid)
    if n < 4:
        raise ValidationError("derivatives need at least 4 nodes")
    yv = _values(y)
    if table is None:
        table = StencilTable(grid, fields.g)
    a = table.a
    if np.any(np.abs(a[1:-1]) < SINGULAR_A):
        i = int(np.flatnonzero(np.abs(a[1:-1]) < SINGULAR_A)[0]) + 1
        raise StencilError(f"singular derivative stencil at node {i}")
    S0, Sp, Sm = table.derivative_weights(fields.f)
    out = np.empty(n)
    i = table.inner
    out[1:-1] = (Sp[i] * yv[table.ip] - Sm[i] * yv[table.im] - S0[i] * yv[i]) / (2.0 * a[i] * table.h)
    out[0] = derivative_endpoint(fields, yv, out[2], out[1], "left")
    out[-1] = derivative_endpoint(fields, yv, out[int(grid.left[n - 2])], out[n - 2], "right")
    return out
