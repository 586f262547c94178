import math

import numpy as np
import pytest

from glnm.builtins import builtin_problem
from glnm.derivative import derivative_endpoint, derivative_interior, derivatives
from glnm.grid import GridSpec, build_grid
from glnm.problem import sample_fields
from glnm.propagate import step_recurrence


def test_linear_exact():
    grid = build_grid(GridSpec.uniform(0.0, 1.0, 0.1))
    fs = sample_fields(grid, 0.0, 0.0)
    yp = derivatives(fs, grid.nodes)
    np.testing.assert_allclose(yp, 1.0, atol=1e-14)
    assert derivative_interior(fs, grid.nodes, 4) == pytest.approx(1.0, abs=1e-14)


def test_endpoint_formula_linear():
    grid = build_grid(GridSpec.uniform(0.0, 1.0, 0.1))
    fs = sample_fields(grid, 0.0, 0.0)
    assert derivative_endpoint(fs, grid.nodes, 1.0, 1.0, "left") == pytest.approx(1.0, abs=1e-14)
    assert derivative_endpoint(fs, grid.nodes, 1.0, 1.0, "right") == pytest.approx(1.0, abs=1e-14)


@pytest.fixture(scope="module")
def exp_solution():
    b = builtin_problem("manufactured_exp", step=0.01)
    fs = b.fields()
    y = step_recurrence(fs, b.y_start(fs.grid)).y
    return fs, y


def test_manufactured_interior(exp_solution):
    fs, y = exp_solution
    ex = np.exp(fs.grid.nodes)
    yp = derivatives(fs, y)
    assert np.all(np.abs(yp[1:-1] - ex[1:-1]) < 5e-8 * ex[1:-1])


def test_manufactured_right_endpoint(exp_solution):
    fs, y = exp_solution
    yp = derivatives(fs, y)
    assert abs(yp[-1] - math.e**2) < 1e-8


def test_sine_at_peak():
    grid = build_grid(GridSpec.uniform(math.pi / 2 - 1, math.pi / 2 + 1, 0.1))
    fs = sample_fields(grid, 0.0, 1.0)
    yp = derivatives(fs, np.sin(grid.nodes))
    assert abs(yp[10]) < 1e-5
    np.testing.assert_allclose(yp, np.cos(grid.nodes), atol=2e-6)


def test_decay_left_endpoint():
    grid = build_grid(GridSpec.uniform(0.0, 2.0, 0.1))
    fs = sample_fields(grid, 0.0, -1.0)
    yp = derivatives(fs, np.exp(-grid.nodes))
    assert abs(yp[0] + 1.0) < 2e-6


def test_order_and_junctions():
    spec = GridSpec([(0.0, 0.4, 0.01), (0.4, 2.0, 0.04)])
    errs = []
    for s in (1, 2, 4):
        grid = build_grid(spec.scaled(s))
        fs = sample_fields(grid, lambda x: x, lambda x: -(1 + x))
        ex = np.exp(grid.nodes)
        errs.append(np.max(np.abs(derivatives(fs, ex) - ex)))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all((orders > 3.5) & (orders < 4.5))


def test_variable_g_interior():
    # Bessel: derivative of J0 is -J1
    b = builtin_problem("bessel_j0", step=0.01)
    fs = b.fields()
    y, yp_exact, _ = b.exact(fs.grid.nodes)
    yp = derivatives(fs, y)
    assert np.max(np.abs(yp - yp_exact)) < 1e-7
