import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from glnm.errors import GridError
from glnm.grid import GridSpec, build_grid


def test_single_segment():
    g = build_grid(GridSpec.uniform(0.0, 1.0, 0.1))
    assert len(g) == 11
    np.testing.assert_allclose(g.nodes, np.linspace(0, 1, 11), atol=1e-15)
    assert g.nodes[-1] == 1.0
    assert not g.junction.any()
    np.testing.assert_allclose(g.step[1:-1], 0.1)


def test_two_segments_junction():
    g = build_grid(GridSpec([(0.0, 0.4, 0.05), (0.4, 2.0, 0.1)]))
    # 8 fine intervals + 16 coarse intervals -> 25 nodes
    assert len(g) == 25
    j = np.flatnonzero(g.junction)
    assert j.tolist() == [8]
    assert g.nodes[8] == 0.4
    # junction stencil uses the coarse spacing on both sides
    assert g.step[8] == pytest.approx(0.1)
    assert g.nodes[g.left[8]] == pytest.approx(0.3)


def test_non_junction_nodes_are_uniform():
    g = build_grid(GridSpec([(0.001, 0.1, 0.001), (0.1, 1.0, 0.01)]))
    x = g.nodes
    for i in range(1, len(g) - 1):
        if g.junction[i]:
            continue
        assert x[i] - x[i - 1] == pytest.approx(x[i + 1] - x[i], rel=1e-9)
        assert g.left[i] == i - 1


@pytest.mark.parametrize(
    "segments",
    [
        [(0.0, 0.4, 0.05), (0.5, 2.0, 0.1)],  # gap
        [(0.0, 1.0, 0.3)],  # non-integer count
        [(-0.1, 1.0, 0.1)],  # negative start
        [(0.0, 1.0, 0.0)],  # zero step
        [(0.0, 0.5, 0.1), (0.5, 1.0, 0.05)],  # step decreases outward
        [(0.0, 0.5, 0.1), (0.5, 1.1, 0.15)],  # not an integer multiple
        [(0.0, 0.1, 0.05), (0.1, 1.0, 0.3)],  # too few fine intervals for the coarse stencil
        [(0.0, 0.1, 0.1)],  # fewer than 3 nodes
        [],
    ],
)
def test_invalid_specs(segments):
    with pytest.raises(GridError):
        build_grid(GridSpec(segments))


def test_json_round_trip():
    spec = GridSpec([(0.0005, 0.1, 0.0005), (0.1, 40.0, 0.005)])
    again = GridSpec.from_json(spec.to_json())
    assert again == spec
    np.testing.assert_array_equal(build_grid(again).nodes, build_grid(spec).nodes)


def test_arrays_read_only():
    g = build_grid(GridSpec.uniform(0.0, 1.0, 0.1))
    with pytest.raises(ValueError):
        g.nodes[0] = 1.0


def test_scaled_halves_steps():
    spec = GridSpec([(0.0, 0.4, 0.05), (0.4, 2.0, 0.1)])
    fine = build_grid(spec.scaled(2))
    coarse = build_grid(spec)
    assert len(fine) == 2 * len(coarse) - 1
    np.testing.assert_allclose(fine.nodes[::2], coarse.nodes, atol=1e-14)


@given(
    st.integers(3, 40),
    st.integers(1, 30),
    st.sampled_from([1, 2, 4, 5]),
    st.sampled_from([0.001, 0.01, 0.05]),
)
def test_deterministic_and_monotone(n_fine, n_coarse, ratio, h):
    n_fine = max(n_fine, ratio)
    a = n_fine * h
    spec = GridSpec([(0.0, a, h), (a, a + n_coarse * ratio * h, ratio * h)])
    g1, g2 = build_grid(spec), build_grid(spec)
    np.testing.assert_array_equal(g1.nodes, g2.nodes)
    assert np.all(np.diff(g1.nodes) > 0)
    assert len(g1) == n_fine + n_coarse + 1
