"""JSON problem files and CSV solution tables."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .builtins import builtin_problem
from .eigensolve import EigenProblem
from .errors import ValidationError
from .grid import GridSpec, build_grid
from .problem import BoundaryModel, DecaySeed, FieldSamples, FixedRatioSeed, PowerLawSeed, TabulatedSeed


def fmt(v) -> str:
    """17 significant digits; round-trips any float64."""
    return format(float(v), ".17g")


def write_csv(columns: dict, comments=()) -> str:
    """Render named, equal-length columns as CSV text."""
    names = list(columns)
    out = io.StringIO()
    for c in comments:
        out.write(f"# {c}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(names)
    n = len(columns[names[0]])
    for i in range(n):
        w.writerow([v[i] if isinstance(v[i], (int, np.integer)) else fmt(v[i]) for v in (columns[k] for k in names)])
    return out.getvalue()


def read_csv(text: str):
    """Parse :func:`write_csv` output into ``(columns, comments)``."""
    lines = text.splitlines()
    comments = [ln[1:].strip() for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if ln and not ln.startswith("#")]
    rows = list(csv.reader(body))
    if not rows:
        raise ValidationError("empty CSV")
    header, data = rows[0], rows[1:]
    cols = {}
    for j, name in enumerate(header):
        vals = [r[j] for r in data]
        if name == "node_index":
            cols[name] = np.array([int(v) for v in vals], dtype=np.int64)
        else:
            cols[name] = np.array([float(v) for v in vals])
    return cols, comments


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, allow_nan=True)


def _load(text_or_dict):
    if isinstance(text_or_dict, dict):
        return text_or_dict
    try:
        return json.loads(text_or_dict)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from None


def boundary_from_dict(d) -> BoundaryModel:
    d = d or {}
    origin = d.get("origin", {"power": 0.0})
    if "values" in origin:
        y0, y1 = origin["values"]
        o = TabulatedSeed(float(y0), float(y1))
    else:
        o = PowerLawSeed(float(origin.get("power", 0.0)), float(origin.get("linear", 0.0)))
    tail = d.get("tail", "decay")
    if tail == "decay":
        t = DecaySeed()
    elif isinstance(tail, dict) and "ratio" in tail:
        t = FixedRatioSeed(float(tail["ratio"]))
    else:
        raise ValidationError(f"tail seed must be 'decay' or {{'ratio': r}}, got {tail!r}")
    return BoundaryModel(o, t)


@dataclass
class IvpSpec:
    fields: FieldSamples
    y_start: tuple
    direction: str = "outward"
    exact: object = None


def load_ivp(text_or_dict) -> IvpSpec:
    """Problem file for ``propagate``/``derivative``.

    ``{"builtin": name, "params": {...}, "grid": {...}}`` or
    ``{"tabulated": {"g": [...], "f": [...]}, "grid": {...}, "y_start": [a, b]}``.
    """
    d = _load(text_or_dict)
    direction = d.get("direction", "outward")
    if "builtin" in d:
        b = builtin_problem(d["builtin"], **d.get("params", {}))
        spec = GridSpec.from_dict(d["grid"]) if "grid" in d else b.grid_spec
        grid = build_grid(spec)
        if b.kind == "eigen":
            e = float(d.get("e", b.exact_energy if b.exact_energy is not None else math.nan))
            p = b.eigen_problem(0, grid_spec=spec)
            fields = p.fields(e)
        else:
            fields = b.fields(spec)
        if "y_start" in d:
            y_start = tuple(map(float, d["y_start"]))
        elif b.exact is None:
            raise ValidationError(f"{b.name} needs explicit y_start")
        else:
            x = grid.nodes
            pair = (x[0], x[1]) if direction == "outward" else (x[-2], x[-1])
            y_start = tuple(float(b.exact(t)[0]) for t in pair)
        return IvpSpec(fields, y_start, direction, b.exact)
    if "tabulated" in d:
        if "grid" not in d or "y_start" not in d:
            raise ValidationError("tabulated problems need 'grid' and 'y_start'")
        grid = build_grid(GridSpec.from_dict(d["grid"]))
        tab = d["tabulated"]
        fields = FieldSamples(grid, np.array(tab["g"], dtype=float), np.array(tab["f"], dtype=float))
        return IvpSpec(fields, tuple(map(float, d["y_start"])), direction)
    raise ValidationError("problem file needs 'builtin' or 'tabulated'")


def load_eigen(text_or_dict) -> tuple[EigenProblem, object]:
    """Problem file for ``eigensolve``; returns the problem and the builtin (or None).

    ``{"builtin": name, "params": {...}, "target_nodes": k, "energy_window": [lo, hi], "grid": {...}}``
    or ``{"effective_mass": {"m": [...], "m_prime": [...], "V": [...], "g_extra": [...]},
    "grid": {...}, "boundary": {...}, "weight": p, "target_nodes": k, "energy_window": [lo, hi]}``.
    """
    d = _load(text_or_dict)
    target = int(d.get("target_nodes", 0))
    window = tuple(map(float, d["energy_window"])) if "energy_window" in d else None
    if "builtin" in d:
        b = builtin_problem(d["builtin"], **d.get("params", {}))
        spec = GridSpec.from_dict(d["grid"]) if "grid" in d else None
        return b.eigen_problem(target, grid_spec=spec, energy_window=window), b
    if "effective_mass" in d:
        em = d["effective_mass"]
        if window is None:
            raise ValidationError("explicit problems need an energy_window")
        grid = build_grid(GridSpec.from_dict(d["grid"]))
        g_extra = np.array(em["g_extra"], dtype=float) if "g_extra" in em else None
        p = EigenProblem(
            grid=grid,
            m=np.array(em["m"], dtype=float),
            m_prime=np.array(em["m_prime"], dtype=float),
            V=np.array(em["V"], dtype=float),
            boundary=boundary_from_dict(d.get("boundary")),
            target_nodes=target,
            energy_window=window,
            weight=int(d.get("weight", 0)),
            g_extra=g_extra,
        )
        return p, None
    raise ValidationError("eigen problem file needs 'builtin' or 'effective_mass'")
