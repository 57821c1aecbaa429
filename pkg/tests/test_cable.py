import numpy as np
import pytest

from src.cable import (
    SeamScaling,
    build_cable_system,
    cable_ball_measure,
    cable_energy,
    check_rsvr_seam,
    content_bounds,
    interpolate,
)
from src.penergy import energy
from src.scaling import PowerScaling
from src.utils.exceptions import DomainError, InputError

from conftest import make_path


@pytest.mark.parametrize('p', [1.5, 2.0, 3.0])
def test_single_cable_energy(p):
    cs = build_cable_system(make_path(2), p)
    assert cable_energy(cs, interpolate(cs, np.array([0.0, 1.0]))) == pytest.approx(1.0)


@pytest.mark.parametrize('p', [1.5, 2.0, 3.0])
def test_interpolation_preserves_energy(carpet2, p):
    cs = build_cable_system(carpet2, p)
    u = np.random.default_rng(0).normal(size=carpet2.n)
    assert cable_energy(cs, interpolate(cs, u)) == pytest.approx(energy(carpet2, u, p), rel=1e-12)


def test_cable_energy_restricted_to_vertices(path5):
    cs = build_cable_system(path5, 2.0)
    f = interpolate(cs, np.linspace(0.0, 1.0, 5))
    assert cable_energy(cs, f, vertices=[0, 1, 2]) == pytest.approx(energy(path5, f.values, 2.0, A=[0, 1, 2]))
    assert cable_energy(cs, f, center=0, r=0.5) == pytest.approx(0.0625)


def test_cable_function_values(path5):
    cs = build_cable_system(path5, 2.0)
    f = interpolate(cs, np.array([0.0, 2.0, 2.0, 0.0, 1.0]))
    assert f.at(0, 0.25) == pytest.approx(0.5)
    np.testing.assert_allclose(f.gradients, [2.0, 0.0, -2.0, 1.0])
    np.testing.assert_array_equal(f.at_vertices(), f.values)
    with pytest.raises(InputError):
        f.at(0, 1.5)


def test_interpolate_rejects_wrong_shape(path5):
    with pytest.raises(InputError):
        interpolate(build_cable_system(path5, 2.0), np.zeros(3))


def test_lambda_mass_per_cable(carpet2):
    cs = build_cable_system(carpet2, 2.0)
    np.testing.assert_allclose(cs.lambda_masses, carpet2.vertex_mass)
    assert cs.total_lambda_mass == pytest.approx(carpet2.vertex_mass * carpet2.m)


def test_ball_measure_half_cable_at_leaf():
    graph = make_path(3)
    cs = build_cable_system(graph, 2.0)
    assert cable_ball_measure(cs, 0, 0.5) == pytest.approx(graph.vertex_mass / 2.0)
    assert cable_ball_measure(cs, 0, 100.0) == pytest.approx(graph.vertex_mass * graph.m)


def test_ball_measure_rejects_nonpositive_radius(path5):
    with pytest.raises(DomainError):
        cable_ball_measure(build_cable_system(path5, 2.0), 0, 0.0)


def test_content_bounds():
    cs = build_cable_system(make_path(3), 2.0)
    assert content_bounds(cs, [1]) == (0.0, 0.0)
    assert content_bounds(cs, [0, 2]) == pytest.approx((1.0, 2.0))
    with pytest.raises(InputError):
        content_bounds(cs, [])


def test_content_bounds_on_whole_graph_keeps_cache_small():
    graph = make_path(400)
    cs = build_cable_system(graph, 2.0)
    assert content_bounds(cs, range(graph.n)) == pytest.approx((199.5, 399.0))
    assert graph.cached_sources == 0


def test_seam_scaling_is_continuous():
    seam = SeamScaling(PowerScaling(2.0), 0.1, 3.0)
    assert seam(0.1) == pytest.approx(0.01)
    assert seam(0.05) == pytest.approx(0.01 * 0.5 ** 3)
    assert seam(0.2) == pytest.approx(0.04)


def test_seam_check_on_path(path5):
    cs = build_cable_system(path5, 2.0)
    report = check_rsvr_seam(cs, 0.0, [0.25, 0.5, 1.0, 2.0, 4.0])
    assert report.straddles
    assert report.C == pytest.approx(1.0)
    assert report.pairs == 15


def test_seam_check_rejects_bad_tau(path5):
    cs = build_cable_system(path5, 2.0)
    with pytest.raises(DomainError):
        check_rsvr_seam(cs, 1.0, [0.5, 2.0])
    with pytest.raises(DomainError):
        check_rsvr_seam(cs, -1.5, [0.5, 2.0])
