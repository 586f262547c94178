import math

import numpy as np
import pytest

from glnm.builtins import BUILTIN_NAMES, builtin_problem
from glnm.errors import ValidationError
from glnm.grid import GridSpec, build_grid
from glnm.problem import sample_fields
from glnm.propagate import step_recurrence
from glnm.reference import bessel_j0, bessel_j1, numerov_classic, rk4_integrate


def test_rk4_linear_exact():
    sol = rk4_integrate(0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.1)
    np.testing.assert_allclose(sol.y, sol.x, atol=1e-15)


def test_rk4_manufactured():
    sol = rk4_integrate(lambda x: x, lambda x: -(1 + x), 1.0, 1.0, 0.0, 2.0, 0.001)
    assert abs(sol.y[-1] - math.e**2) < 1e-11


def test_rk4_bessel():
    sol = rk4_integrate(lambda x: 1 / x, 1.0, bessel_j0(0.1), -bessel_j1(0.1), 0.1, 5.0, 0.0005)
    assert abs(sol.y[-1] - bessel_j0(5.0)) < 1e-10


def test_series_values():
    # tabulated J0(1), J1(1), J0(5)
    assert bessel_j0(1.0) == pytest.approx(0.7651976865579666, abs=1e-15)
    assert bessel_j1(1.0) == pytest.approx(0.4400505857449335, abs=1e-15)
    assert bessel_j0(5.0) == pytest.approx(-0.1775967713143383, abs=1e-14)
    with pytest.raises(ValidationError):
        bessel_j0(20.0)


def test_classic_linear():
    h = 0.1
    y = numerov_classic(np.zeros(11), h, (0.0, h)).y
    np.testing.assert_allclose(y, h * np.arange(11), atol=1e-15)


def test_classic_sine():
    h = 0.01
    x = np.arange(0, round(math.pi / h) + 1) * h
    y = numerov_classic(np.ones_like(x), h, (0.0, math.sin(h))).y
    assert np.max(np.abs(y - np.sin(x))) < 1e-10


def test_classic_matches_glnm():
    grid = build_grid(GridSpec.uniform(0.0, 3.0, 0.01))
    fs = sample_fields(grid, 0.0, lambda x: 4 + np.cos(3 * x))
    a = step_recurrence(fs, (0.0, 0.01)).y
    b = numerov_classic(fs.f, 0.01, (0.0, 0.01)).y
    k = np.arange(len(a))
    ulp = np.spacing(np.maximum(np.abs(a), np.abs(b)))
    assert np.all(np.abs(a - b) <= 4 * ulp * np.maximum(k, 1))


@pytest.mark.parametrize("name", [n for n in BUILTIN_NAMES if builtin_problem(n).exact is not None])
def test_builtin_residuals(name):
    b = builtin_problem(name)
    grid = build_grid(b.grid_spec)
    x = grid.nodes
    y, yp, ypp = (np.asarray(v, dtype=float) for v in b.exact(x))
    g = np.asarray(b.g(x), dtype=float) * np.ones_like(x)
    if b.kind == "ivp":
        f = np.asarray(b.f(x), dtype=float) * np.ones_like(x)
    else:
        f = 2 * (b.exact_energy - b.potential(x) * np.ones_like(x))
    scale = np.abs(ypp) + np.abs(g * yp) + np.abs(f * y) + 1e-300
    assert np.max(np.abs(ypp + g * yp + f * y) / np.maximum(scale, 1.0)) < 1e-12


def test_unknown_builtin():
    with pytest.raises(ValidationError):
        builtin_problem("nope")
