import numpy as np
import pytest

from fixtures import SCF_TOY_E0
from glnm.builtins import builtin_problem
from glnm.errors import ValidationError
from glnm.scf import ScfConfig, ScfFields, scf_iterate, toy_problem


def test_identity_update_converges_at_once():
    p = builtin_problem("harmonic_R").eigen_problem(0)
    state = scf_iterate([p], lambda s: s.fields)
    assert state.converged
    assert state.iteration == 1
    assert state.history[0]["delta_field"] == 0.0
    assert abs(state.energies[0] - 1.5) < 1e-6


@pytest.fixture(scope="module")
def toy_run():
    problems, update = toy_problem()
    return scf_iterate(problems, update, ScfConfig(mixing=0.5, max_iterations=100, tolerance_e=1e-12, tolerance_field=1e-10))


def test_toy_converges_to_fixture(toy_run):
    assert toy_run.converged
    assert abs(toy_run.energies[0] - SCF_TOY_E0) < 1e-10


def test_toy_history_monotone(toy_run):
    d = [h["delta_e"] for h in toy_run.history[3:]]
    assert np.all(np.diff(d) < 0)


def test_full_mixing_also_converges():
    problems, update = toy_problem()
    state = scf_iterate(problems, update, ScfConfig(mixing=1.0, max_iterations=100, tolerance_e=1e-12, tolerance_field=1e-10))
    assert state.converged
    assert abs(state.energies[0] - SCF_TOY_E0) < 1e-10


def test_iteration_cap():
    problems, update = toy_problem()
    state = scf_iterate(problems, update, ScfConfig(max_iterations=3))
    assert not state.converged
    assert state.iteration == 3
    assert "not converged" in state.message


def test_mixing_formula():
    a = ScfFields(np.zeros(3), np.zeros(3), (np.zeros(3),))
    b = ScfFields(np.ones(3), np.ones(3), (np.full(3, 2.0),))
    c = a.mixed(b, 0.25)
    np.testing.assert_allclose(c.V[0], 0.5)
    assert a.mixed(b, 1.0) is b
    assert a.max_change(b) == 2.0


@pytest.mark.parametrize("kw", [{"mixing": 0.0}, {"mixing": 1.5}, {"tolerance_e": -1}, {"max_iterations": 0}])
def test_config_validation(kw):
    with pytest.raises(ValidationError):
        ScfConfig(**kw)


def test_callback_sees_each_iteration():
    problems, update = toy_problem()
    seen = []
    scf_iterate(problems, update, ScfConfig(max_iterations=4), callback=lambda s: seen.append(s.iteration))
    assert seen == [1, 2, 3, 4]
