import numpy as np
import pytest

from src.harnack import (
    BoundarySampler,
    SobolevCheckSpec,
    bmo_norm,
    check_caccioppoli,
    check_growth_lemma,
    check_log_bmo,
    check_mean_value,
    check_sobolev,
    check_weak_harnack,
    estimate_harnack,
    estimate_poincare,
    mean_value_ratio,
    neumann_constant,
    sample_balls,
    trial_rng,
)
from src.netgraph import ball, boundary_ring
from src.penergy import solve_poisson
from src.scaling import PowerScaling
from src.utils.exceptions import DomainError, GeometryError, InputError


@pytest.fixture(scope='module')
def center(lattice):
    return lattice.nearest_vertex([0.5, 0.5])


def _checkerboard(graph):
    k = np.round(graph.coords / graph.epsilon).astype(int).sum(axis=1)
    return np.where(k % 2 == 0, 1.0, -1.0)


def test_harnack_constant_boundary_gives_ratio_one(lattice, center, opts):
    def constant(rng, k):
        return 'constant', np.ones(lattice.n)

    report = estimate_harnack(lattice, center, 2 * lattice.epsilon, trials=3, sampler=constant, opts=opts)
    assert report.ratios == pytest.approx([1.0, 1.0, 1.0])
    assert report.C_H_hat == pytest.approx(1.0)


def test_harnack_random_boundary_is_reproducible(lattice, center, opts):
    first = estimate_harnack(lattice, center, 2 * lattice.epsilon, trials=6, seed=4, opts=opts)
    second = estimate_harnack(lattice, center, 2 * lattice.epsilon, trials=6, seed=4, opts=opts)
    assert first.ratios == second.ratios
    assert 1.0 <= first.C_H_hat < float('inf')
    assert len(first.trials) + len(first.skipped) == 6


def test_harnack_needs_a_boundary(path5):
    with pytest.raises(GeometryError):
        estimate_harnack(path5, 2, 2.0, A_H=4.0, trials=1)


def test_harnack_big_ball_must_fit_in_box(lattice):
    corner = lattice.nearest_vertex([0.1, 0.1])
    with pytest.raises(GeometryError):
        estimate_harnack(lattice, corner, 2 * lattice.epsilon, trials=1, fit_policy='box')


def test_harnack_rejects_nonpositive_radius(lattice, center):
    with pytest.raises(DomainError):
        estimate_harnack(lattice, center, 0.0, trials=1)


def test_boundary_sampler_kinds(lattice, center):
    ring = boundary_ring(lattice, ball(lattice, center, 0.3))
    sampler = BoundarySampler(lattice, ring)
    rng = trial_rng(0, 0)
    kind, g = sampler.sample(rng, 'field')
    assert kind == 'field'
    assert np.all(g[ring] > 0)
    assert np.all(np.delete(g, ring) == 0)
    _, bump = sampler.sample(rng, 'bump')
    assert np.count_nonzero(bump) == 1
    _, affine = sampler.sample(rng, 'affine')
    assert affine.min() >= 0 and affine.max() > 0


def test_boundary_sampler_rejects_bad_input(lattice):
    with pytest.raises(InputError):
        BoundarySampler(lattice, np.array([0, 1]), kinds=('gaussian',))
    with pytest.raises(InputError):
        BoundarySampler(lattice, np.array([], dtype=int))


def test_trial_rng_is_deterministic():
    assert trial_rng(3, 7).random() == trial_rng(3, 7).random()
    assert trial_rng(3, 7).random() != trial_rng(3, 8).random()


def test_mean_value_of_constant(lattice, center):
    ratio, degenerate = mean_value_ratio(lattice, np.full(lattice.n, 2.0), center, 0.3, 2.0)
    assert not degenerate
    assert ratio == pytest.approx(1.0)


def test_mean_value_zero_function_is_degenerate(lattice, center):
    assert mean_value_ratio(lattice, np.zeros(lattice.n), center, 0.3, 2.0)[1]


def test_check_mean_value_subharmonic_part(lattice, center, opts):
    U = ball(lattice, center, 0.4)
    g = np.asarray(lattice.coords[:, 0], dtype=float)
    report = check_mean_value(lattice, U, g, center, 0.3, 2.0, q=2.0, theta=0.4, opts=opts)
    assert not report.degenerate
    assert 0 < report.ratio < float('inf')


def test_growth_lemma_above_level(lattice, center):
    report = check_growth_lemma(lattice, np.full(lattice.n, 3.0), center, 0.3, a=1.5)
    assert report.holds
    assert report.density == 1.0
    assert report.delta_hat >= 1.0


def test_growth_lemma_inconclusive_below_density(lattice, center):
    u = np.zeros(lattice.n)
    u[center] = 1.0
    assert check_growth_lemma(lattice, u, center, 0.3, a=0.5).status == 'inconclusive'


def test_growth_lemma_rejects_nonpositive_level(lattice, center):
    with pytest.raises(InputError):
        check_growth_lemma(lattice, np.ones(lattice.n), center, 0.3, a=0.0)


def test_weak_harnack_for_superharmonic(lattice, center, opts):
    u = solve_poisson(lattice, ball(lattice, center, 0.45), 1.0, 2.0, opts=opts).u
    report = check_weak_harnack(lattice, u, center, 0.3)
    assert report.ok
    assert set(report.ratios) == {0.25, 0.5, 1.0}


def test_bmo_of_constant_is_zero(lattice, center):
    U = ball(lattice, center, 0.4)
    balls = sample_balls(lattice, U, [0.1, 0.15], 10, seed=1)
    assert balls
    assert bmo_norm(lattice, np.full(lattice.n, 4.0), U, balls).norm == 0.0


def test_bmo_of_checkerboard(lattice, center):
    U = ball(lattice, center, 0.4)
    balls = sample_balls(lattice, U, [0.1, 0.15], 10, seed=1)
    report = bmo_norm(lattice, _checkerboard(lattice), U, balls)
    assert 0.5 < report.norm <= 1.0
    assert report.worst_ball in report.balls


def test_bmo_requires_admissible_balls(lattice, center):
    with pytest.raises(InputError):
        bmo_norm(lattice, np.ones(lattice.n), [center], [(center, 0.3)])


def test_log_bmo_of_positive_solution(lattice, center, opts):
    U = ball(lattice, center, 0.4)
    h = solve_poisson(lattice, U, 1.0, 2.0, opts=opts).u + 1.0
    balls = sample_balls(lattice, ball(lattice, center, 0.3), [0.1], 8, seed=2)
    report = check_log_bmo(lattice, h, ball(lattice, center, 0.3), balls)
    assert np.isfinite(report.norm) and report.norm > 0


def test_log_bmo_rejects_bad_functions(lattice, center):
    balls = [(center, 0.1)]
    with pytest.raises(InputError):
        check_log_bmo(lattice, np.zeros(lattice.n), ball(lattice, center, 0.3), balls)
    with pytest.raises(InputError):
        check_log_bmo(lattice, -np.ones(lattice.n), ball(lattice, center, 0.3), balls)


def test_sobolev_exponents():
    spec = SobolevCheckSpec.from_constants(2.0, 4.0)
    assert spec.nu == pytest.approx(3.0)
    assert spec.kappa == pytest.approx(3.0)


def test_sobolev_ratio_for_supported_function(lattice, center):
    spec = SobolevCheckSpec.from_constants(2.0, 4.0)
    d = lattice.intrinsic_distances(center)
    f = np.maximum(0.2 - d, 0.0)
    ratio = check_sobolev(lattice, f, center, 0.2, spec, PowerScaling(2.0), 2.0)
    assert 0 < ratio < float('inf')
    assert check_sobolev(lattice, np.zeros(lattice.n), center, 0.2, spec, PowerScaling(2.0), 2.0) == 0.0


def test_sobolev_rejects_function_outside_ball(lattice, center):
    spec = SobolevCheckSpec.from_constants(2.0, 4.0)
    with pytest.raises(InputError):
        check_sobolev(lattice, np.ones(lattice.n), center, 0.2, spec, PowerScaling(2.0), 2.0)


def test_caccioppoli_zero_function(lattice, center, opts):
    assert check_caccioppoli(lattice, np.zeros(lattice.n), center, 0.15, 0.15, 0.0,
                             PowerScaling(2.0), 2.0, opts) == 0.0


def test_caccioppoli_for_subharmonic_part(lattice, center, opts):
    u = solve_poisson(lattice, ball(lattice, center, 0.45), 1.0, 2.0, opts=opts).u
    ratio = check_caccioppoli(lattice, u, center, 0.15, 0.15, 0.5 * u.max(), PowerScaling(2.0), 2.0, opts)
    assert 0 <= ratio < float('inf')


def test_poincare_estimate_below_exact_constant(lattice, center, opts):
    report = estimate_poincare(lattice, center, 0.2, 1.0, PowerScaling(2.0), 2.0, opts=opts)
    assert np.isfinite(report.C_hat) and report.C_hat > 0
    assert report.exact is not None
    assert report.C_hat <= report.exact * (1.0 + 1e-8)


def test_poincare_constant_probes(lattice, center):
    with pytest.raises(InputError):
        estimate_poincare(lattice, center, 0.2, 2.0, PowerScaling(2.0), 2.0, probes=[('c', np.ones(lattice.n))])


def test_neumann_constant_needs_two_vertices(lattice, center):
    with pytest.raises(InputError):
        neumann_constant(lattice, [center], 1.0)
