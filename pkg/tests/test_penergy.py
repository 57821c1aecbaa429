import numpy as np
import pytest

from src.penergy import (
    DirichletProblem,
    check_comparison,
    check_maximum_principle,
    check_pasting,
    check_poisson_lambda,
    classify,
    energy,
    is_superharmonic,
    poisson_modification,
    riesz_measure,
    solve_dirichlet,
    solve_poisson,
)
from src.netgraph import ball, boundary_ring
from src.scaling import PowerScaling
from src.utils.exceptions import DomainError, IllPosedError, InputError

from conftest import make_path


@pytest.mark.parametrize('p', [1.5, 2.0, 3.0])
def test_energy_of_constant_is_zero(path5, p):
    assert energy(path5, np.full(5, 3.7), p) == 0.0


@pytest.mark.parametrize('p', [1.5, 2.0, 3.0])
def test_energy_single_edge(p):
    graph = make_path(2)
    assert energy(graph, np.array([0.0, 1.0]), p) == pytest.approx(graph.conductance_factor)


def test_energy_linear_path(path5):
    assert energy(path5, np.linspace(0.0, 1.0, 5), 2.0) == pytest.approx(0.25)


def test_energy_restricted_to_subset(path5):
    u = np.linspace(0.0, 1.0, 5)
    assert energy(path5, u, 2.0, A=[0, 1, 2]) == pytest.approx(2 * 0.0625)


def test_energy_rejects_bad_exponent(path5):
    with pytest.raises(DomainError):
        energy(path5, np.zeros(5), 1.0)


def test_energy_rejects_wrong_shape(path5):
    with pytest.raises(InputError):
        energy(path5, np.zeros(4), 2.0)


@pytest.mark.parametrize('p', [1.5, 2.0, 3.0])
def test_dirichlet_constant_data(p, opts):
    graph = make_path(6)
    sol = solve_dirichlet(DirichletProblem(graph, [1, 2, 3, 4], np.full(6, 2.5), p), opts)
    np.testing.assert_allclose(sol.u, 2.5, atol=1e-8)


@pytest.mark.parametrize('p', [1.5, 2.0, 3.0, 4.0])
def test_dirichlet_path_is_linear(p, opts):
    graph = make_path(4)
    g = np.array([0.0, 0.0, 0.0, 1.0])
    sol = solve_dirichlet(DirichletProblem(graph, [1, 2], g, p), opts)
    np.testing.assert_allclose(sol.u, [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0], atol=1e-6)
    assert sol.kkt_residual <= opts.accept_tol


def test_dirichlet_empty_boundary_is_ill_posed(path5):
    with pytest.raises(IllPosedError):
        solve_dirichlet(DirichletProblem(path5, [0, 1, 2, 3, 4], np.zeros(5), 2.0))


def test_dirichlet_empty_domain(path5):
    with pytest.raises(InputError):
        solve_dirichlet(DirichletProblem(path5, [], np.zeros(5), 2.0))


def test_dirichlet_negative_lambda(path5):
    with pytest.raises(DomainError):
        DirichletProblem(path5, [1, 2], np.zeros(5), 2.0, lam=-1.0)


def test_poisson_zero_source(path5, opts):
    sol = solve_poisson(path5, [1, 2, 3], 0.0, 2.5, opts=opts)
    np.testing.assert_allclose(sol.u, 0.0, atol=1e-10)


@pytest.mark.parametrize('p', [2.0, 3.0])
def test_poisson_unit_source_is_superharmonic(lattice, p, opts):
    x = lattice.nearest_vertex([0.5, 0.5])
    U = np.flatnonzero(np.linalg.norm(lattice.coords - lattice.coords[x], axis=1) < 0.3)
    sol = solve_poisson(lattice, U, 1.0, p, opts=opts)
    assert np.all(sol.u[U] > 0)
    assert is_superharmonic(lattice, sol.u, p, U)
    mu = riesz_measure(lattice, sol.u, p, U)
    assert mu[U].min() > 0


def test_classify_labels(path5):
    u = np.array([0.0, 1.0, 1.0, 1.0, 0.0])
    labels = classify(path5, u, 2.0, [1, 2, 3])
    assert list(labels) == ['none', 'superharmonic', 'harmonic', 'superharmonic', 'none']


def test_riesz_measure_rejects_subharmonic(path5):
    with pytest.raises(InputError):
        riesz_measure(path5, np.array([0.0, -1.0, 0.0, 0.0, 0.0]), 2.0, [1, 2, 3])


def test_comparison_identical_solutions(opts):
    graph = make_path(7)
    g = np.zeros(7)
    g[-1] = 1.0
    u = solve_dirichlet(DirichletProblem(graph, range(1, 6), g, 3.0), opts).u
    result = check_comparison(graph, u, u, range(1, 6), 3.0)
    assert result.holds and result.precondition_ok


def test_comparison_shifted_data(opts):
    graph = make_path(7)
    g = np.linspace(0.0, 1.0, 7)
    U = range(1, 6)
    u = solve_dirichlet(DirichletProblem(graph, U, g, 2.0), opts).u
    v = solve_dirichlet(DirichletProblem(graph, U, g - 1.0, 2.0), opts).u
    result = check_comparison(graph, u, v, U, 2.0)
    assert result
    assert result.margin == pytest.approx(1.0)


def test_comparison_inconclusive_when_boundary_order_fails(path5):
    u = np.zeros(5)
    v = np.zeros(5)
    v[0] = 1.0
    assert check_comparison(path5, u, v, [1, 2, 3], 2.0).status == 'inconclusive'


@pytest.mark.parametrize('p', [1.5, 2.0, 3.0])
def test_maximum_principle(lattice, p, opts):
    rng = np.random.default_rng(5)
    x = lattice.nearest_vertex([0.5, 0.5])
    U = np.flatnonzero(np.linalg.norm(lattice.coords - lattice.coords[x], axis=1) < 0.25)
    g = rng.uniform(-1.0, 1.0, lattice.n)
    u = solve_dirichlet(DirichletProblem(lattice, U, g, p), opts).u
    assert check_maximum_principle(lattice, u, U, tol=1e-6)


def test_maximum_principle_detects_violation(path5):
    assert not check_maximum_principle(path5, np.array([0.0, 2.0, 0.0, 0.0, 0.0]), [1, 2, 3])


def test_pasting_minimum_of_superharmonic(opts):
    graph = make_path(9)
    U = range(1, 8)
    u1 = solve_poisson(graph, U, 1.0, 2.0, opts=opts).u
    u2 = np.full(9, 0.5 * u1.max())
    assert check_pasting(graph, u1, u2, range(2, 7), 2.0)['superharmonic']


def test_poisson_modification_keeps_values_outside(opts):
    graph = make_path(9)
    u = solve_poisson(graph, range(1, 8), 1.0, 2.0, opts=opts).u
    modified = poisson_modification(graph, u, range(1, 8), [4], 2.0, opts).u
    outside = [0, 4, 8]
    np.testing.assert_allclose(modified[outside], u[outside])
    # la modification d'une fonction surharmonique la diminue
    assert np.all(modified <= u + 1e-9)
    assert is_superharmonic(graph, modified, 2.0, range(1, 8), tol=1e-6)


def test_poisson_modification_empty_domain(path5):
    with pytest.raises(InputError):
        poisson_modification(path5, np.zeros(5), [1, 2], [1, 2], 2.0)


@pytest.mark.parametrize('p', [2.0, 3.0])
def test_poisson_lambda_upper_bound(p, opts):
    graph = make_path(11)
    report = check_poisson_lambda(graph, 5, 3.5, [0.0, 0.5, 1.0, 4.0], p, PowerScaling(2.0), opts)
    assert len(report.rows) == 4
    assert report.upper_holds
    assert report.rows[0].upper_bound == float('inf')
    assert all(row.lower_ratio > 0 for row in report.rows)


@pytest.mark.parametrize('p', [1.5, 3.0])
@pytest.mark.parametrize('a', [0.5, 4.0])
def test_dirichlet_solution_scales_with_data(lattice, p, a, opts):
    x = lattice.nearest_vertex([0.5, 0.5])
    U = ball(lattice, x, 6 * lattice.epsilon)
    ring = boundary_ring(lattice, U)
    g = np.zeros(lattice.n)
    g[ring] = np.random.default_rng(3).uniform(-1.0, 2.0, size=ring.size)
    u = solve_dirichlet(DirichletProblem(lattice, U, g, p), opts).u
    scaled = solve_dirichlet(DirichletProblem(lattice, U, a * g, p), opts).u
    np.testing.assert_allclose(scaled[U], a * u[U], atol=1e-5 * a * np.abs(g).max())
