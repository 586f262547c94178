import math

import numpy as np
import pytest

from glnm.errors import FieldError
from glnm.grid import GridSpec, build_grid
from glnm.problem import (
    BoundaryModel,
    DecaySeed,
    EffectiveMassModel,
    FieldSamples,
    FixedRatioSeed,
    PowerLawSeed,
    hf_map,
    sample_fields,
)


@pytest.fixture
def grid():
    return build_grid(GridSpec.uniform(0.0, 2.0, 0.1))


def test_constant_fields(grid):
    fs = sample_fields(grid, 0.0, 1.0)
    assert np.all(fs.g == 0) and np.all(fs.f == 1)


def test_direct_evaluation(grid):
    fs = sample_fields(grid, lambda x: x, lambda x: -(1 + x))
    assert fs.g[5] == pytest.approx(0.5)
    assert fs.f[5] == pytest.approx(-1.5)


def test_scalar_callable(grid):
    fs = sample_fields(grid, lambda x: math.sin(x), 0.0)
    assert fs.g[10] == pytest.approx(math.sin(1.0))


def test_singular_at_origin(grid):
    with np.errstate(divide="ignore"):
        with pytest.raises(FieldError, match="node 0"):
            sample_fields(grid, lambda x: 2 / x, 1.0)


def test_shape_mismatch(grid):
    with pytest.raises(FieldError):
        FieldSamples(grid, np.zeros(3), np.zeros(len(grid)))


def test_hf_map_constant_mass(grid):
    n = len(grid)
    model = EffectiveMassModel(np.ones(n), np.zeros(n), np.zeros(n), e=-0.5)
    fs = hf_map(model, grid)
    assert np.all(fs.g == 0) and np.all(fs.f == -1)


def test_hf_map_variable_mass():
    grid = build_grid(GridSpec.uniform(0.0, 1.0, 0.1))
    x = grid.nodes
    model = EffectiveMassModel(1 + np.exp(-x), -np.exp(-x), x**2 / 2, e=1.5)
    fs = hf_map(model, grid)
    assert fs.g[0] == pytest.approx(0.5)
    # at x=1 with m=1 the map gives 2(e - V)
    unit = hf_map(EffectiveMassModel(np.ones_like(x), np.zeros_like(x), x**2 / 2, e=1.5), grid)
    assert unit.f[10] == pytest.approx(2.0)


def test_nonpositive_mass(grid):
    n = len(grid)
    m = np.ones(n)
    m[3] = 0.0
    with pytest.raises(FieldError, match=r"m\[3\]"):
        EffectiveMassModel(m, np.zeros(n), np.zeros(n))


def test_seeds():
    grid = build_grid(GridSpec.uniform(0.0, 1.0, 0.1))
    assert BoundaryModel(PowerLawSeed(1)).origin_ratio(grid) == 0.0
    assert BoundaryModel(PowerLawSeed(0)).origin_ratio(grid) == 1.0
    fs = sample_fields(grid, 0.0, -4.0)
    assert BoundaryModel(tail=DecaySeed()).tail_ratio(fs) == pytest.approx(math.exp(-0.2))
    assert BoundaryModel(tail=FixedRatioSeed()).tail_ratio(fs) == 0.0
    with pytest.raises(FieldError):
        PowerLawSeed(-1)


def test_sampled_arrays(grid):
    fs = sample_fields(grid, np.zeros(len(grid)), grid.nodes**2)
    assert fs.f[10] == pytest.approx(1.0)
    with pytest.raises(FieldError):
        sample_fields(grid, np.zeros(3), 1.0)
