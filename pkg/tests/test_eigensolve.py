import math

import numpy as np
import pytest

from fixtures import EFFECTIVE_MASS_GAUSS_E0
from glnm.builtins import builtin_problem
from glnm.eigensolve import EigenProblem, choose_matching_point, mismatch, normalization_integral, solve
from glnm.errors import EigenError, ValidationError
from glnm.grid import GridSpec, build_grid
from glnm.problem import sample_fields


def test_matching_point_turning():
    grid = build_grid(GridSpec.uniform(0.0, 6.0, 0.01))
    fs = sample_fields(grid, 0.0, lambda x: 2 * (1.5 - x * x / 2))
    m = choose_matching_point(fs)
    assert abs(grid.nodes[m] - math.sqrt(3)) <= 0.01


def test_matching_point_forbidden_everywhere():
    grid = build_grid(GridSpec.uniform(0.0, 6.0, 0.01))
    m = choose_matching_point(sample_fields(grid, 0.0, -1.0))
    assert m == (len(grid) - 1) // 2


def test_matching_point_hydrogen():
    prob = builtin_problem("hydrogen_R").eigen_problem(0)
    fs = prob.fields(-0.5)
    m = choose_matching_point(fs)
    assert abs(prob.grid.nodes[m] - 2.0) <= 0.005
    assert not prob.grid.junction[m]


@pytest.fixture(scope="module")
def hydrogen():
    spec = GridSpec([(0.001, 0.1, 0.001), (0.1, 40.0, 0.005)])
    return builtin_problem("hydrogen_R").eigen_problem(0, grid_spec=spec, energy_window=(-1.0, -0.01))


def test_mismatch_at_eigenvalue(hydrogen):
    D, nodes = mismatch(hydrogen, -0.5)
    assert abs(D) < 1e-6 and nodes == 0


def test_mismatch_between_levels(hydrogen):
    # between levels the count jumps where D has a pole, and the pole moves
    # with x_m.  Matching at the ground-state turning point (x = 2) the
    # trial at -0.3 still counts 0; at -0.11 the default x_m counts 1.
    m = choose_matching_point(hydrogen.fields(-0.5))
    D, nodes = mismatch(hydrogen, -0.3, m)
    assert abs(D) > 1e-3 and nodes == 0
    _, nodes = mismatch(hydrogen, -0.11)
    assert nodes == 1


@pytest.mark.parametrize("name", ["hydrogen_R", "harmonic_R", "effective_mass_gauss", "box"])
def test_node_count_monotone(name):
    prob = builtin_problem(name).eigen_problem(2)
    lo, hi = prob.energy_window
    nodes = [mismatch(prob, e)[1] for e in np.linspace(lo, hi, 40)[1:-1]]
    assert np.all(np.diff(nodes) >= 0)
    assert nodes[0] == 0 and nodes[-1] >= 2


@pytest.mark.parametrize("name, step", [("effective_mass_gauss", 0.04), ("box", 1 / 25)])
def test_eigenvalue_grid_convergence(name, step):
    e = [solve(builtin_problem(name, step=step / 2**k).eigen_problem(0)).e for k in range(3)]
    assert abs(e[0] - e[1]) >= 12 * abs(e[1] - e[2])


def test_mismatch_outside_window(hydrogen):
    with pytest.raises(ValidationError):
        mismatch(hydrogen, 0.5)


def test_box_sign_change():
    b = builtin_problem("box")
    prob = b.eigen_problem(0)
    e1 = b.eigenvalue(0)
    m = len(prob.grid) // 2
    Dlo, nlo = mismatch(prob, e1 - 0.1, m)
    Dhi, nhi = mismatch(prob, e1 + 0.1, m)
    assert Dlo < 0 < Dhi and nlo == nhi == 0


@pytest.mark.parametrize("n_r, exact", [(0, -0.5), (1, -0.125)])
def test_hydrogen_levels(n_r, exact):
    sol = solve(builtin_problem("hydrogen_R").eigen_problem(n_r))
    assert abs(sol.e - exact) < 1e-6
    assert sol.nodes == n_r


def test_hydrogen_l1():
    b = builtin_problem("hydrogen_R", l=1)
    sol = solve(b.eigen_problem(0))
    assert abs(sol.e + 0.125) < 1e-6


@pytest.mark.parametrize("n_r", [0, 1, 2])
def test_box_levels(n_r):
    b = builtin_problem("box")
    sol = solve(b.eigen_problem(n_r))
    assert sol.e == pytest.approx(b.eigenvalue(n_r), rel=1e-6)
    y = sol.y.y
    assert np.count_nonzero(np.sign(y[2:-1]) != np.sign(y[1:-2])) == n_r


def test_effective_mass_fixture():
    sol = solve(builtin_problem("effective_mass_gauss").eigen_problem(0))
    assert abs(sol.e - EFFECTIVE_MASS_GAUSS_E0) < 1e-6


def test_scan_invariants():
    prob = builtin_problem("effective_mass_gauss").eigen_problem(0, energy_window=(0.1, 8.0))
    m = choose_matching_point(prob.fields(EFFECTIVE_MASS_GAUSS_E0))
    es = np.linspace(0.2, 7.5, 50)
    scan = [mismatch(prob, e, m) for e in es]
    nodes = np.array([s[1] for s in scan])
    D = np.array([s[0] for s in scan])
    assert np.all(np.diff(nodes) >= 0)
    for n in np.unique(nodes):
        d = D[nodes == n]
        # D rises through a single root on each node-count plateau
        assert np.all(np.diff(d) > 0)
        assert np.count_nonzero(np.diff(np.sign(d)) != 0) <= 1


def test_solution_properties():
    sol = solve(builtin_problem("harmonic_R").eigen_problem(1))
    assert abs(sol.e - 3.5) < 1e-6
    assert sol.match_residual < 1e-10
    assert sol.match_continuity < 1e-8
    grid = builtin_problem("harmonic_R").eigen_problem(1).grid
    assert normalization_integral(grid, sol.y.y, 2, tail_kappa=0.0) == pytest.approx(1.0, abs=1e-9)
    # first extremum positive
    y = sol.y.y
    k = int(np.argmax(np.abs(y[:-1]) >= np.abs(y[1:])))
    assert y[k] > 0


def test_window_without_target_raises():
    b = builtin_problem("box")
    prob = b.eigen_problem(3, energy_window=(1.0, 10.0))
    with pytest.raises(EigenError):
        solve(prob)


def test_problem_validation():
    grid = build_grid(GridSpec.uniform(0.0, 1.0, 0.1))
    n = len(grid)
    with pytest.raises(ValidationError):
        EigenProblem(grid, np.ones(n), np.zeros(n), np.zeros(n), energy_window=(1.0, 0.0))
    with pytest.raises(ValidationError):
        EigenProblem(grid, np.ones(n - 1), np.zeros(n), np.zeros(n))
    with pytest.raises(ValidationError):
        EigenProblem(grid, -np.ones(n), np.zeros(n), np.zeros(n))
