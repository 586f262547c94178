"""Named test problems with known answers.

Each builtin bundles a grid, the coefficient functions, boundary seeds and,
where one exists, a closed-form solution or spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .eigensolve import EigenProblem
from .errors import ValidationError
from .grid import GridSpec, Segment, build_grid
from .problem import BoundaryModel, DecaySeed, FixedRatioSeed, PowerLawSeed, sample_fields
from .reference import bessel_j0, bessel_j1

HYDROGEN_SEGMENTS = ((0.0005, 0.1, 0.0005), (0.1, 40.0, 0.005))
HARMONIC_SEGMENTS = ((0.0005, 0.1, 0.0005), (0.1, 10.0, 0.005))


@dataclass
class BuiltinProblem:
    """A named problem.

    ``kind`` is ``"ivp"`` (propagate from two starting values) or
    ``"eigen"`` (shoot for an eigenvalue).  ``exact(x)`` returns
    ``(y, y', y'')`` where a closed form exists; for eigen problems it is
    the solution at ``exact_energy``.
    """

    name: str
    kind: str
    grid_spec: GridSpec
    g: Callable
    f: Callable | None = None
    exact: Callable | None = None
    exact_energy: float | None = None
    mass: Callable | None = None
    mass_prime: Callable | None = None
    potential: Callable | None = None
    g_extra: Callable | None = None
    boundary: BoundaryModel = field(default_factory=BoundaryModel)
    weight: int = 0
    eigenvalue: Callable | None = None
    window: Callable | None = None
    params: dict = field(default_factory=dict)

    # -- initial value problems
    def fields(self, grid_spec: GridSpec | None = None):
        grid = build_grid(grid_spec or self.grid_spec)
        if self.kind == "eigen":
            raise ValidationError(f"{self.name} is an eigenvalue problem; use eigen_problem()")
        return sample_fields(grid, self.g, self.f)

    def y_start(self, grid):
        x = grid.nodes
        return self.exact(x[0])[0], self.exact(x[1])[0]

    # -- eigenvalue problems
    def eigen_problem(self, target_nodes=0, grid_spec: GridSpec | None = None, energy_window=None):
        if self.kind != "eigen":
            raise ValidationError(f"{self.name} is not an eigenvalue problem")
        grid = build_grid(grid_spec or self.grid_spec)
        x = grid.nodes
        with np.errstate(all="ignore"):
            g_extra = None if self.g_extra is None else np.asarray(self.g_extra(x), dtype=float) * np.ones_like(x)
            m = np.asarray(self.mass(x), dtype=float) * np.ones_like(x)
            mp = np.asarray(self.mass_prime(x), dtype=float) * np.ones_like(x)
            V = np.asarray(self.potential(x), dtype=float) * np.ones_like(x)
        return EigenProblem(
            grid=grid,
            m=m,
            m_prime=mp,
            V=V,
            boundary=self.boundary,
            target_nodes=target_nodes,
            energy_window=energy_window or self.window(target_nodes),
            weight=self.weight,
            g_extra=g_extra,
        )


def _uniform(start, stop, step):
    return GridSpec((Segment(float(start), float(stop), float(step)),))


def _manufactured_exp(x_max=2.0, step=0.01):
    def exact(x):
        v = np.exp(x)
        return v, v, v

    return BuiltinProblem(
        "manufactured_exp",
        "ivp",
        _uniform(0.0, x_max, step),
        g=lambda x: x,
        f=lambda x: -(1.0 + x),
        exact=exact,
        params={"x_max": x_max, "step": step},
    )


def _bessel_j0(x_min=0.1, x_max=5.0, step=0.005):
    if x_max > 12:
        raise ValidationError("bessel_j0 is limited to x_max <= 12 by its series oracle")

    def exact(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        j0 = np.array([bessel_j0(t) for t in x])
        j1 = np.array([bessel_j1(t) for t in x])
        out = (j0, -j1, -j0 + j1 / x)
        return tuple(v[0] for v in out) if len(x) == 1 else out

    return BuiltinProblem(
        "bessel_j0",
        "ivp",
        _uniform(x_min, x_max, step),
        g=lambda x: 1.0 / x,
        f=lambda x: 1.0 + 0.0 * x,
        exact=exact,
        params={"x_min": x_min, "x_max": x_max, "step": step},
    )


def _hydrogen_R(l=0, segments=HYDROGEN_SEGMENTS):
    l = int(l)
    ll = l * (l + 1)

    def eigenvalue(n_r):
        n = n_r + l + 1
        return -0.5 / (n * n)

    def window(n_r):
        e = eigenvalue(n_r)
        return (2.0 * eigenvalue(0), 0.5 * (e + eigenvalue(n_r + 1)) if n_r < 3 else 0.5 * e)

    def exact(x):
        # ground state of the given l: R = x^l exp(-x/(l+1)), e = -1/(2(l+1)^2)
        k = 1.0 / (l + 1)
        x = np.asarray(x, dtype=float)
        y = x**l * np.exp(-k * x)
        yp = y * (l / x - k) if l else -k * y
        ypp = y * ((l / x - k) ** 2 - l / (x * x)) if l else k * k * y
        return y, yp, ypp

    return BuiltinProblem(
        "hydrogen_R",
        "eigen",
        GridSpec(tuple(Segment(*map(float, s)) for s in segments)),
        g=lambda x: 2.0 / x,
        exact=exact,
        exact_energy=eigenvalue(0),
        mass=lambda x: 1.0,
        mass_prime=lambda x: 0.0,
        potential=lambda x: -1.0 / x + ll / (2.0 * x * x),
        g_extra=lambda x: 2.0 / x,
        boundary=BoundaryModel(PowerLawSeed(float(l), -1.0 / (l + 1)), DecaySeed()),
        weight=2,
        eigenvalue=eigenvalue,
        window=window,
        params={"l": l},
    )


def _harmonic_R(l=0, segments=HARMONIC_SEGMENTS):
    l = int(l)
    ll = l * (l + 1)

    def eigenvalue(n_r):
        return 2.0 * n_r + l + 1.5

    def window(n_r):
        return (0.5 * eigenvalue(0), eigenvalue(n_r) + 1.0)

    def exact(x):
        x = np.asarray(x, dtype=float)
        y = x**l * np.exp(-0.5 * x * x)
        d = (l / x - x) if l else -x
        yp = y * d
        ypp = y * (d * d - (l / (x * x) if l else 0.0) - 1.0)
        return y, yp, ypp

    return BuiltinProblem(
        "harmonic_R",
        "eigen",
        GridSpec(tuple(Segment(*map(float, s)) for s in segments)),
        g=lambda x: 2.0 / x,
        exact=exact,
        exact_energy=eigenvalue(0),
        mass=lambda x: 1.0,
        mass_prime=lambda x: 0.0,
        potential=lambda x: 0.5 * x * x + ll / (2.0 * x * x),
        g_extra=lambda x: 2.0 / x,
        boundary=BoundaryModel(PowerLawSeed(float(l)), DecaySeed()),
        weight=2,
        eigenvalue=eigenvalue,
        window=window,
        params={"l": l},
    )


def _effective_mass_gauss(beta=0.3, x_max=8.0, step=0.01):
    beta = float(beta)

    def window(n_r):
        return (0.1, 2.0 * n_r + 3.0)

    return BuiltinProblem(
        "effective_mass_gauss",
        "eigen",
        _uniform(0.0, x_max, step),
        g=lambda x: 2.0 * beta * x * np.exp(-x * x) / (1.0 + beta * np.exp(-x * x)),
        mass=lambda x: 1.0 + beta * np.exp(-x * x),
        mass_prime=lambda x: -2.0 * beta * x * np.exp(-x * x),
        potential=lambda x: 0.5 * x * x,
        boundary=BoundaryModel(PowerLawSeed(1.0), DecaySeed()),
        weight=0,
        window=window,
        params={"beta": beta, "x_max": x_max, "step": step},
    )


def _box(length=1.0, step=None):
    L = float(length)
    step = L / 200 if step is None else float(step)

    def eigenvalue(n_r):
        k = (n_r + 1) * math.pi / L
        return 0.5 * k * k

    def window(n_r):
        return (0.5 * eigenvalue(0), 0.5 * (eigenvalue(n_r) + eigenvalue(n_r + 1)))

    def exact(x):
        k = math.pi / L
        x = np.asarray(x, dtype=float)
        return np.sin(k * x), k * np.cos(k * x), -k * k * np.sin(k * x)

    return BuiltinProblem(
        "box",
        "eigen",
        _uniform(0.0, L, step),
        g=lambda x: 0.0 * x,
        exact=exact,
        exact_energy=eigenvalue(0),
        mass=lambda x: 1.0,
        mass_prime=lambda x: 0.0,
        potential=lambda x: 0.0,
        boundary=BoundaryModel(PowerLawSeed(1.0), FixedRatioSeed(0.0)),
        weight=0,
        eigenvalue=eigenvalue,
        window=window,
        params={"length": L, "step": step},
    )


_BUILTINS = {
    "manufactured_exp": _manufactured_exp,
    "bessel_j0": _bessel_j0,
    "hydrogen_R": _hydrogen_R,
    "harmonic_R": _harmonic_R,
    "effective_mass_gauss": _effective_mass_gauss,
    "box": _box,
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin_problem(name: str, **params) -> BuiltinProblem:
    """Look up a builtin by name; keyword arguments override its defaults."""
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise ValidationError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None
    try:
        return factory(**params)
    except TypeError as exc:
        raise ValidationError(f"invalid parameters for {name}: {exc}") from None
