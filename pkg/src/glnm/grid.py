"""Piecewise-uniform radial meshes.

A grid is a chain of uniform segments whose steps grow outward by integer
factors.  Every interior node gets one uniform three-point stencil
``(left[i], i, i + 1)``: away from segment boundaries ``left[i] == i - 1``;
at a boundary into a coarser segment the left neighbour is the fine node one
*coarse* step back, so no stencil ever mixes two spacings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import GridError

_INT_TOL = 1e-9


@dataclass(frozen=True)
class Segment:
    start: float
    stop: float
    step: float


@dataclass(frozen=True)
class GridSpec:
    """Ordered list of contiguous uniform segments."""

    segments: tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "segments",
            tuple(s if isinstance(s, Segment) else Segment(*s) for s in self.segments),
        )

    @classmethod
    def uniform(cls, start, stop, step):
        return cls((Segment(float(start), float(stop), float(step)),))

    @classmethod
    def from_dict(cls, data):
        try:
            segs = [Segment(float(s["start"]), float(s["stop"]), float(s["step"])) for s in data["segments"]]
        except (KeyError, TypeError) as exc:
            raise GridError(f"malformed grid spec: {exc!r}") from None
        return cls(tuple(segs))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_dict(self):
        return {"segments": [{"start": s.start, "stop": s.stop, "step": s.step} for s in self.segments]}

    def to_json(self):
        return json.dumps(self.to_dict())

    def scaled(self, factor):
        """Same breakpoints with every step divided by the integer ``factor``."""
        return GridSpec(tuple(Segment(s.start, s.stop, s.step / factor) for s in self.segments))


def _as_int(value, what):
    n = round(value)
    if n < 1 or abs(value - n) > _INT_TOL * max(1.0, abs(value)):
        raise GridError(f"{what} must be a positive integer, got {value!r}")
    return int(n)


@dataclass(frozen=True, eq=False)
class Grid:
    """Nodes of a :class:`GridSpec` plus per-node stencil bookkeeping.

    Attributes
    ----------
    nodes : ndarray
        Strictly increasing coordinates.
    step : ndarray
        Spacing ``h`` of the stencil centred at each interior node (the
        coarser spacing at a segment boundary); NaN at the two endpoints.
    left : ndarray of int
        Index of the node at ``x[i] - step[i]``; -1 at the endpoints.
    junction : ndarray of bool
        True at interior segment boundaries.
    bounds : tuple of (first, last) node index per segment
    """

    spec: GridSpec
    nodes: np.ndarray
    step: np.ndarray
    left: np.ndarray
    junction: np.ndarray
    bounds: tuple = field(default=())

    def __len__(self):
        return len(self.nodes)

    @property
    def n(self):
        return len(self.nodes)

    def segment_of(self, i):
        """Index of the segment holding node ``i`` (a junction belongs to the coarser side)."""
        for k, (a, b) in enumerate(self.bounds):
            if a <= i < b or (k == len(self.bounds) - 1 and i == b):
                return k
        raise IndexError(i)


def build_grid(spec: GridSpec) -> Grid:
    """Expand ``spec`` into nodes and validate its invariants."""
    segs = spec.segments
    if not segs:
        raise GridError("grid spec has no segments")
    if segs[0].start < 0:
        raise GridError(f"grid starts at negative coordinate {segs[0].start!r}")
    counts = []
    for k, s in enumerate(segs):
        if not (s.step > 0 and np.isfinite(s.step)):
            raise GridError(f"segment {k}: step must be positive, got {s.step!r}")
        if not s.stop > s.start:
            raise GridError(f"segment {k}: stop {s.stop!r} <= start {s.start!r}")
        counts.append(_as_int((s.stop - s.start) / s.step, f"segment {k} length/step"))
        if k:
            prev = segs[k - 1]
            if prev.stop != s.start:
                raise GridError(f"segments {k - 1} and {k} are not contiguous ({prev.stop!r} != {s.start!r})")
            ratio = _as_int(s.step / prev.step, f"step ratio between segments {k - 1} and {k}")
            if counts[k - 1] < ratio:
                raise GridError(
                    f"segment {k - 1} has {counts[k - 1]} intervals, fewer than the step ratio {ratio}; "
                    "the junction stencil would leave the segment"
                )

    total = sum(counts) + 1
    nodes = np.empty(total)
    step = np.full(total, np.nan)
    left = np.full(total, -1, dtype=np.int64)
    junction = np.zeros(total, dtype=bool)
    bounds = []
    pos = 0
    for k, (s, n) in enumerate(zip(segs, counts)):
        kk = np.arange(n + 1)
        pts = s.start + kk * s.step
        pts[-1] = s.stop
        nodes[pos : pos + n + 1] = pts
        step[pos : pos + n] = s.step
        left[pos : pos + n] = np.arange(pos, pos + n) - 1
        if k:
            junction[pos] = True
            ratio = round(s.step / segs[k - 1].step)
            left[pos] = pos - ratio
        bounds.append((pos, pos + n))
        pos += n
    step[0] = np.nan
    left[0] = -1
    step[-1] = np.nan
    if total < 3:
        raise GridError("grid needs at least three nodes")
    for arr in (nodes, step, left, junction):
        arr.setflags(write=False)
    return Grid(spec=spec, nodes=nodes, step=step, left=left, junction=junction, bounds=tuple(bounds))
