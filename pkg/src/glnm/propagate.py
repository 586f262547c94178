"""Running the generalized Numerov recurrence over a grid.

Two forms are provided: direct stepping of values (``step_recurrence``)
and the ratio recurrences used for shooting (``sweep_outward`` and
``sweep_inward``), which cannot overflow and which record sign changes
of the solution as negative ratios.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import PropagationError, ValidationError
from .problem import FieldSamples
from .stencil import StencilTable

TINY_WEIGHT = 1e-300


@dataclass(frozen=True, eq=False)
class SolutionSamples:
    """Solution values on a grid.

    ``y * 2**log2_scale`` are the true values of a direct propagation; NaN
    marks nodes outside the propagated range.  ``norm`` is the weighted
    integral of ``y**2`` before normalization, when that was done.
    """

    y: np.ndarray
    y_prime: np.ndarray | None = None
    norm: float | None = None
    log2_scale: int = 0
    x: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class RatioSweep:
    """Ratios from one sweep.

    ``outward``: ``ratios[k] = y[k]/y[k+1]`` for ``k`` in ``[lo, hi]``.
    ``inward``: ``ratios[k] = y[k]/y[k-1]`` for ``k`` in ``[lo, hi]``.
    Entries outside ``[lo, hi]`` are NaN.
    """

    direction: str
    ratios: np.ndarray
    pole_flags: np.ndarray
    lo: int
    hi: int

    @property
    def negative_count(self):
        return int(np.count_nonzero(self.ratios[self.lo : self.hi + 1] < 0))

    def count_negative(self, lo, hi):
        lo = max(lo, self.lo)
        hi = min(hi, self.hi)
        return int(np.count_nonzero(self.ratios[lo : hi + 1] < 0))

    def node_range(self):
        """First and last node whose value this sweep determines."""
        if self.direction == "outward":
            return self.lo, self.hi + 1
        return self.lo - 1, self.hi


def _weights(fields, weights):
    if weights is None:
        weights = StencilTable(fields.grid, fields.g).weights(fields.f)
    return weights


def step_recurrence(
    fields: FieldSamples,
    y_start,
    first: int = 0,
    last: int | None = None,
    direction: str = "outward",
    weights=None,
) -> SolutionSamples:
    """Propagate values with ``T0 y0 = T+ y+ + T- y-`` over nodes ``first..last``.

    ``y_start`` holds the two values at ``first, first+1`` (outward) or at
    ``last-1, last`` (inward).  Growing solutions are rescaled by powers of
    two; the exponent is returned in ``log2_scale``.
    """
    grid = fields.grid
    n = len(grid)
    last = n - 1 if last is None else last
    if not (0 <= first and last <= n - 1 and last - first >= 2):
        raise ValidationError(f"range [{first}, {last}] must span at least 3 nodes of {n}")
    T0, Tp, Tm = _weights(fields, weights)
    left = grid.left
    centers = np.arange(first + 1, last)
    y = np.full(n, np.nan)
    if direction == "outward":
        if np.any(left[centers] < first):
            raise ValidationError("outward range starts inside a junction stencil")
        if np.any(np.abs(Tp[centers]) < TINY_WEIGHT):
            raise PropagationError("T+ vanishes; cannot advance outward")
        y[first], y[first + 1] = y_start
        e2 = kernels.outward_values(T0, Tp, Tm, left, y, first, last)
    elif direction == "inward":
        if np.any(np.abs(Tm[centers]) < TINY_WEIGHT):
            raise PropagationError("T- vanishes; cannot advance inward")
        y[last - 1], y[last] = y_start
        e2 = kernels.inward_values(T0, Tp, Tm, left, y, first, last)
        y[:first] = np.nan
    else:
        raise ValidationError(f"direction must be 'outward' or 'inward', got {direction!r}")
    return SolutionSamples(y=y, log2_scale=int(e2))


def sweep_outward(fields: FieldSamples, seed: float, stop: int | None = None, weights=None) -> RatioSweep:
    """Outward ratios ``y_k/y_{k+1}`` for ``k = 0..stop`` from the origin seed ``y_0/y_1``."""
    grid = fields.grid
    n = len(grid)
    stop = n - 2 if stop is None else stop
    if not 2 <= stop <= n - 2:
        raise ValidationError(f"outward stop must be in [2, {n - 2}], got {stop}")
    T0, Tp, Tm = _weights(fields, weights)
    q = np.full(n, np.nan)
    pole = np.zeros(n, dtype=bool)
    kernels.outward_ratios(T0, Tp, Tm, grid.left, float(seed), stop, q, pole)
    return RatioSweep("outward", q, pole, 0, stop)


def sweep_inward(fields: FieldSamples, seed: float, stop: int = 1, weights=None) -> RatioSweep:
    """Inward ratios ``y_k/y_{k-1}`` for ``k = stop..N`` from the tail seed ``y_N/y_{N-1}``."""
    grid = fields.grid
    n = len(grid)
    if not 1 <= stop <= n - 3:
        raise ValidationError(f"inward stop must be in [1, {n - 3}], got {stop}")
    T0, Tp, Tm = _weights(fields, weights)
    r = np.full(n, np.nan)
    pole = np.zeros(n, dtype=bool)
    kernels.inward_ratios(T0, Tp, Tm, grid.left, float(seed), stop, r, pole)
    # a junction fill may run past ``stop``; report only what was asked for
    lo = stop
    r[:lo] = np.nan
    pole[:lo] = False
    return RatioSweep("inward", r, pole, lo, n - 1)


def reconstruct(sweep: RatioSweep, anchor: int, anchor_value: float = 1.0) -> SolutionSamples:
    """Solution values from a ratio sweep, with ``y[anchor] = anchor_value``."""
    first, last = sweep.node_range()
    if not first <= anchor <= last:
        raise ValidationError(f"anchor {anchor} outside swept nodes [{first}, {last}]")
    n = len(sweep.ratios)
    y = np.full(n, np.nan)
    if sweep.direction == "outward":
        q = np.ascontiguousarray(sweep.ratios[first:last])
        pole = np.ascontiguousarray(sweep.pole_flags[first:last])
        seg = np.empty(last - first + 1)
        kernels.walk_ratios(q, pole, anchor - first, float(anchor_value), seg)
        y[first : last + 1] = seg
    else:
        # reversed inward ratios are outward ratios of the mirrored grid
        q = np.ascontiguousarray(sweep.ratios[last:first:-1])
        pole = np.ascontiguousarray(sweep.pole_flags[last:first:-1])
        seg = np.empty(last - first + 1)
        kernels.walk_ratios(q, pole, last - anchor, float(anchor_value), seg)
        y[first : last + 1] = seg[::-1]
    return SolutionSamples(y=y)
