"""
Contrôles d'acceptation de la suite verify-all.

Chaque contrôle lit ses paramètres dans la section verify.<nom> de la
configuration (valeurs par défaut ci-dessous), avec des tailles réduites
en mode rapide, et retourne un CheckOutcome avec ses critères nommés.
"""

import math
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
from scipy import sparse
from scipy.sparse import csgraph
import scipy.sparse.linalg as splinalg

from src.cable import build_cable_system, cable_energy, interpolate
from src.capacity import (
    CondenserSpec,
    build_cutoff,
    capacity,
    capacity_scaling_sweep,
    check_cutoff_sobolev,
    check_equilibrium_identities,
    verify_wolff_bounds,
    AnnulusCapacities,
)
from src.experiments.interfaces import AcceptanceCheck, CheckOutcome
from src.harnack import BoundarySampler, check_log_bmo, estimate_harnack, sample_balls, trial_rng
from src.modulus import brute_modulus, check_mod_cap_comparability, p_modulus
from src.netgraph import (
    NetGraph,
    as_mask,
    ball,
    boundary_ring,
    check_llc,
    distances,
    greedy_5b_cover,
    model_graph,
    outside_ball,
)
from src.penergy import (
    DirichletProblem,
    SolverOptions,
    check_comparison,
    check_maximum_principle,
    check_pasting,
    check_poisson_lambda,
    energy,
    poisson_modification,
    solve_dirichlet,
    solve_poisson,
)
from src.scaling import PowerScaling, iterate_bound
from src.utils.config_loader import get_workers
from src.utils.exceptions import GeometryError
from src.utils.logger_config import setup_logger

logger = setup_logger('checks', 'experiments.log')

DEFAULT_POINT = [0.5, 1.0 / 6.0]


def _within(values: List[float], factor: float) -> bool:
    values = [abs(v) for v in values]
    if not values or not all(math.isfinite(v) and v > 0 for v in values):
        return False
    return max(values) / min(values) <= factor


def _psi_hat(graph: NetGraph, center: int, radii, p: float, opts: SolverOptions, A: float = 2.0) -> PowerScaling:
    sweep = capacity_scaling_sweep(graph, center, radii, A=A, p=p, opts=opts, workers=get_workers())
    return sweep.psi_hat(graph)


def check_interpolation_energy(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    graph = model_graph(params['kind'], params['level'])
    rng = np.random.default_rng(params['seed'])
    worst = 0.0
    for p in params['ps']:
        cs = build_cable_system(graph, p)
        for _ in range(params['samples']):
            u = rng.normal(size=graph.n)
            expected = energy(graph, u, p)
            worst = max(worst, abs(cable_energy(cs, interpolate(cs, u)) - expected) / expected)
    return CheckOutcome('interpolation_energy', worst <= params['tol'],
                        {'energy_identity': worst <= params['tol']}, {'max_rel_err': worst})


def _direct_harmonic(graph: NetGraph, U: np.ndarray, g: np.ndarray) -> np.ndarray:
    W = (graph.adjacency > 0).astype(float)
    L = csgraph.laplacian(W).tocsr()
    inside = as_mask(graph.n, U)
    free = np.flatnonzero(inside)
    ring = boundary_ring(graph, inside)
    rhs = -(L[free][:, ring] @ g[ring])
    u = g.copy()
    u[~inside] = 0.0
    u[ring] = g[ring]
    u[free] = splinalg.spsolve(sparse.csc_matrix(L[free][:, free]), rhs)
    return u


def check_p2_solver_oracle(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    graph = model_graph(params['kind'], params['level'])
    x = graph.nearest_vertex(params['point'])
    U = ball(graph, x, params['radius'])
    ring = boundary_ring(graph, U)
    worst_err, worst_time = 0.0, 0.0
    for k in range(params['datasets']):
        rng = trial_rng(params['seed'], k)
        g = np.zeros(graph.n)
        g[ring] = rng.normal(size=ring.size)
        start = time.perf_counter()
        u = solve_dirichlet(DirichletProblem(graph, U, g, 2.0), opts).u
        worst_time = max(worst_time, time.perf_counter() - start)
        oracle = _direct_harmonic(graph, U, g)
        worst_err = max(worst_err, float(np.max(np.abs(u[U] - oracle[U]))))
    criteria = {'max_norm': worst_err <= params['tol'], 'time': worst_time <= params['time_limit']}
    return CheckOutcome('p2_solver_oracle', all(criteria.values()), criteria,
                        {'max_err': worst_err, 'max_seconds': worst_time})


def _path_graph(vertices: int, epsilon: float = 0.5) -> NetGraph:
    edges = [(k, k + 1) for k in range(vertices - 1)]
    return NetGraph.from_edges(vertices, edges, epsilon=epsilon,
                               phi=PowerScaling(1.0, 1.0, 'volume'), psi=PowerScaling(2.0, 1.0, 'walk'))


def check_closed_forms(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    rows = []
    cap_ok = mod_ok = True
    for n in params['ns']:
        for p in params['ps']:
            graph = _path_graph(n + 1)
            spec = CondenserSpec([0], [n])
            cap = capacity(graph, spec, p, opts).value
            cap_expected = graph.conductance_factor * n ** (1.0 - p)
            mod = p_modulus(_path_graph(n), CondenserSpec([0], [n - 1]), p).value
            mod_expected = n ** (1.0 - p)
            cap_err = abs(cap - cap_expected) / cap_expected
            mod_err = abs(mod - mod_expected) / mod_expected
            cap_ok &= cap_err <= params['tol']
            mod_ok &= mod_err <= params['tol']
            rows.append({'n': n, 'p': p, 'cap': cap, 'cap_rel_err': cap_err, 'mod': mod, 'mod_rel_err': mod_err})
    criteria = {'capacity_closed_form': bool(cap_ok), 'modulus_closed_form': bool(mod_ok)}
    return CheckOutcome('closed_forms', all(criteria.values()), criteria, {}, {'closed_forms': rows})


def _random_small_graph(rng: np.random.Generator, max_vertices: int) -> NetGraph:
    n = int(rng.integers(4, max_vertices + 1))
    G = nx.Graph()
    G.add_nodes_from(range(n))
    for v in range(1, n):
        G.add_edge(int(rng.integers(v)), v)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.25:
                G.add_edge(i, j)
    return NetGraph.from_edges(n, sorted(G.edges()))


def check_modulus_oracle(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    rows, worst = [], 0.0
    for k in range(params['graphs']):
        rng = trial_rng(params['seed'], k)
        graph = _random_small_graph(rng, params['max_vertices'])
        p = float(rng.choice(params['ps']))
        spec = CondenserSpec([0], [graph.n - 1])
        fast = p_modulus(graph, spec, p).value
        brute = brute_modulus(graph, spec, p)
        err = abs(fast - brute) / max(brute, 1e-300)
        worst = max(worst, err)
        rows.append({'graph': k, 'n': graph.n, 'm': graph.m, 'p': p, 'cutting_plane': fast, 'brute': brute,
                     'rel_err': err})
    ok = worst <= params['tol']
    return CheckOutcome('modulus_oracle', ok, {'oracle_match': ok}, {'max_rel_err': worst}, {'modulus_oracle': rows})


def check_comparability(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    ratios, rows = [], []
    for level in params['levels']:
        graph = model_graph('carpet', level)
        x = graph.nearest_vertex(params['point'])
        R = params['R']
        spec = CondenserSpec(ball(graph, x, R), outside_ball(graph, x, params['A'] * R))
        report = check_mod_cap_comparability(graph, spec, params['p'], opts=opts)
        ratios.append(report.ratio)
        rows.append({'level': level, 'cap': report.cap, 'mod': report.mod, 'ratio': report.ratio})
    finite = all(math.isfinite(r) and r > 0 for r in ratios)
    criteria = {'finite': finite, 'cross_level': _within(ratios, params['factor'])}
    return CheckOutcome('mod_cap_comparability', all(criteria.values()), criteria, {'ratios': ratios},
                        {'mod_cap_comparability': rows})


def check_capacity_scaling(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    criteria, details, tables = {}, {}, {}
    workers = get_workers()

    lattice = model_graph('lattice2d', params['lattice_side'])
    h = lattice.epsilon
    x = lattice.nearest_vertex([0.5, 0.5])
    sweep = capacity_scaling_sweep(lattice, x, [k * h for k in params['spacings']], A=2.0, p=2.0,
                                   opts=opts, workers=workers)
    criteria['lattice_slope'] = abs(sweep.slope) <= params['lattice_tol']
    details['lattice_slope'] = sweep.slope
    tables['capacity_scaling_lattice2d'] = sweep.table()

    interval = model_graph('interval', params['interval_level'])
    h = interval.epsilon
    x = interval.nearest_vertex([0.5])
    sweep = capacity_scaling_sweep(interval, x, [k * h for k in params['spacings']], A=2.0, p=2.0,
                                   opts=opts, workers=workers)
    criteria['interval_slope'] = abs(sweep.slope + 1.0) <= params['interval_tol']
    details['interval_slope'] = sweep.slope
    tables['capacity_scaling_interval'] = sweep.table()

    carpet = model_graph('carpet', params['carpet_level'])
    x = carpet.nearest_vertex(params['point'])
    for p in params['ps']:
        sweep = capacity_scaling_sweep(carpet, x, params['carpet_radii'], A=2.0, p=p, opts=opts, workers=workers)
        criteria[f'carpet_beta_p{p}'] = sweep.beta_hat >= p - 0.1 and sweep.beta_hat > carpet.d_h - 1.0
        details[f'carpet_beta_p{p}'] = sweep.beta_hat
        tables[f'capacity_scaling_carpet_p{p}'] = sweep.table()

    # sensibilité à A: rapportée, pas bloquante
    for A in params['A_sensitivity']:
        sweep = capacity_scaling_sweep(carpet, x, params['carpet_radii'], A=A, p=2.0, opts=opts, workers=workers)
        details[f'carpet_beta_A{A}'] = sweep.beta_hat
        tables[f'capacity_scaling_carpet_A{A}'] = sweep.table()
    return CheckOutcome('capacity_scaling', all(criteria.values()), criteria, details, tables)


def _interior(graph: NetGraph) -> np.ndarray:
    lo, hi = graph.coords.min(axis=0), graph.coords.max(axis=0)
    inside = np.all((graph.coords > lo + 0.5 * graph.epsilon) & (graph.coords < hi - 0.5 * graph.epsilon), axis=1)
    return np.flatnonzero(inside)


def check_wolff(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    graph = model_graph('carpet', params['level'])
    x = graph.nearest_vertex(params['point'])
    U = _interior(graph)
    caps = AnnulusCapacities(graph, params['p'], opts)
    lowers, uppers, rows, degenerate = [], [], [], False
    for R in params['Rs']:
        report = verify_wolff_bounds(graph, U, x, R, 1.0, params['p'], opts, caps)
        lowers.append(report.lower_ratio)
        uppers.append(report.upper_ratio)
        degenerate |= report.degenerate
        rows.append({'R': R, 'u_x0': report.u_x0, 'wolff_R': report.wolff_R, 'wolff_2R': report.wolff_2R,
                     'lower_ratio': report.lower_ratio, 'upper_ratio': report.upper_ratio})
    criteria = {
        'lower_bound': all(v >= params['lower_min'] for v in lowers),
        'upper_bound': all(v <= params['upper_max'] for v in uppers),
        'lower_stable': _within(lowers, params['factor']),
        'upper_stable': _within(uppers, params['factor']),
        'non_degenerate': not degenerate,
    }
    return CheckOutcome('wolff_bounds', all(criteria.values()), criteria, {}, {'wolff_bounds': rows})


def check_poisson_scaling(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    graph = model_graph('carpet', params['level'])
    x = graph.nearest_vertex(params['point'])
    criteria, rows = {}, []
    for p in params['ps']:
        psi_hat = _psi_hat(graph, x, params['sweep_radii'], p, opts)
        sups, infs = [], []
        for R in params['Rs']:
            B = ball(graph, x, R)
            u = solve_poisson(graph, B, 1.0, p, opts=opts).u
            scale = float(psi_hat(R)) ** (1.0 / (p - 1.0))
            sups.append(float(u[B].max()) / scale)
            infs.append(float(u[ball(graph, x, R / 2.0)].min()) / scale)
            rows.append({'p': p, 'R': R, 'sup_ratio': sups[-1], 'inf_ratio': infs[-1]})
        criteria[f'sup_band_p{p}'] = _within(sups, params['factor'])
        criteria[f'inf_band_p{p}'] = _within(infs, params['factor'])
        report = check_poisson_lambda(graph, x, params['Rs'][0], params['lambdas'], p, psi_hat, opts)
        criteria[f'lambda_upper_p{p}'] = report.upper_holds
    return CheckOutcome('poisson_scaling', all(criteria.values()), criteria, {}, {'poisson_scaling': rows})


def check_harnack(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    criteria, rows = {}, []
    lattice = model_graph('lattice2d', params['lattice_side'])
    carpet = model_graph('carpet', params['carpet_level'])
    spaces = [
        ('lattice2d', lattice, lattice.nearest_vertex([0.5, 0.5]), [k * lattice.epsilon for k in params['lattice_r']]),
        ('carpet', carpet, carpet.nearest_vertex(params['point']), params['carpet_r']),
    ]
    for name, graph, x, radii in spaces:
        for p in params['ps']:
            values = []
            for r in radii:
                report = estimate_harnack(graph, x, r, params['A_H'], params['trials'], params['seed'],
                                          p=p, opts=opts, workers=get_workers())
                values.append(report.C_H_hat)
                criteria[f'{name}_p{p}_r{r:.4g}_inf_positive'] = all(t.inf > 0 for t in report.trials)
                rows.append({'space': name, 'p': p, 'r': r, 'C_H_hat': report.C_H_hat,
                             'trials': len(report.trials)})
            criteria[f'{name}_p{p}_finite'] = all(math.isfinite(v) for v in values)
            criteria[f'{name}_p{p}_stable'] = _within(values, params['factor'])
    return CheckOutcome('harnack', all(criteria.values()), criteria, {}, {'harnack': rows})


def _random_domain(graph: NetGraph, rng: np.random.Generator):
    for _ in range(100):
        x = int(rng.integers(graph.n))
        U = ball(graph, x, float(rng.uniform(0.2, 0.45)))
        ring = boundary_ring(graph, U)
        if U.size >= 3 and ring.size:
            return x, U, ring
    raise GeometryError("Aucun domaine aléatoire avec bord non vide")


def check_principles(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    return run_principles(model_graph('carpet', params['level']), params, opts)


def run_principles(graph: NetGraph, params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    """
    Instances aléatoires des principes de comparaison et du maximum, du
    recollement et de la modification de Poisson sur un graphe donné.
    """
    tol = params['tol']
    violations = {'comparison': 0, 'maximum': 0, 'pasting': 0, 'modification': 0}
    inconclusive = 0

    for k in range(params['comparison']):
        rng = trial_rng(params['seed'], k)
        _, U, ring = _random_domain(graph, rng)
        p = float(rng.choice(params['ps']))
        lam = float(rng.choice([0.0, 1.0]))
        g1 = np.zeros(graph.n)
        g1[ring] = rng.normal(size=ring.size)
        g2 = g1 + np.abs(rng.normal(size=graph.n)) * as_mask(graph.n, ring)
        f1 = rng.normal(size=graph.n)
        f2 = f1 + np.abs(rng.normal(size=graph.n))
        u = solve_dirichlet(DirichletProblem(graph, U, g2, p, lam, f2), opts).u
        v = solve_dirichlet(DirichletProblem(graph, U, g1, p, lam, f1), opts).u
        result = check_comparison(graph, u, v, U, p, lam, tol)
        violations['comparison'] += result.status == 'violated'
        inconclusive += result.status == 'inconclusive'

    for k in range(params['maximum']):
        rng = trial_rng(params['seed'] + 1, k)
        _, U, ring = _random_domain(graph, rng)
        p = float(rng.choice(params['ps']))
        g = np.zeros(graph.n)
        g[ring] = rng.normal(size=ring.size)
        u = solve_dirichlet(DirichletProblem(graph, U, g, p), opts).u
        violations['maximum'] += not check_maximum_principle(graph, u, U, tol)

    for k in range(params['pasting']):
        rng = trial_rng(params['seed'] + 2, k)
        x, U2, _ = _random_domain(graph, rng)
        p = float(rng.choice(params['ps']))
        u2 = solve_poisson(graph, U2, np.abs(rng.normal(size=graph.n)), p, opts=opts).u
        U1 = np.intersect1d(U2, ball(graph, x, float(rng.uniform(0.05, 0.15))))
        u1 = poisson_modification(graph, u2, U1, [], p, opts).u if U1.size else u2
        violations['pasting'] += not check_pasting(graph, u1, u2, U2, p, tol)['superharmonic']

    for k in range(params['modification']):
        rng = trial_rng(params['seed'] + 3, k)
        x, U, _ = _random_domain(graph, rng)
        p = float(rng.choice(params['ps']))
        u = solve_poisson(graph, U, np.abs(rng.normal(size=graph.n)), p, opts=opts).u
        K = np.intersect1d(U, ball(graph, x, float(rng.uniform(0.02, 0.1))))
        if K.size == U.size:
            continue
        modified = poisson_modification(graph, u, U, K, p, opts).u
        violations['modification'] += bool(np.any(modified > u + params['modification_tol']))

    criteria = {name: count == 0 for name, count in violations.items()}
    notes = [f"{inconclusive} instances de comparaison non concluantes"] if inconclusive else []
    return CheckOutcome('principles', all(criteria.values()), criteria, {'violations': violations}, notes=notes)


def summarize_equilibrium(rows: List[Dict[str, Any]]) -> Tuple[Dict[str, bool], Dict[str, Any], List[str]]:
    """
    Critères bloquants (appariement, support) et bilan des comparaisons
    avec concurrents et sur-solutions, rapporté en notes.
    """
    criteria = {
        'pairing': all(row['pairing_ok'] for row in rows),
        'support': all(row['support_ok'] for row in rows),
    }
    details: Dict[str, Any] = {'condensers': len(rows)}
    notes = []
    for key, label in (('competitors_ok', 'concurrents'), ('supersolutions_ok', 'sur-solutions')):
        failed = [row['condenser'] for row in rows if not row[key]]
        details[f'{key[:-3]}_failures'] = len(failed)
        if failed:
            notes.append(f"Comparaison avec les {label} en défaut pour les condensateurs {failed}")
    return criteria, details, notes


def check_equilibrium(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    graph = model_graph('carpet', params['level'])
    rows = []
    k = 0
    while len(rows) < params['condensers'] and k < 10 * params['condensers']:
        rng = trial_rng(params['seed'], k)
        k += 1
        x = int(rng.integers(graph.n))
        r1 = float(rng.uniform(0.08, 0.2))
        r2 = r1 * float(rng.uniform(1.5, 2.5))
        p = float(rng.choice(params['ps']))
        if rng.random() < 0.5:
            A2 = None
            A1 = outside_ball(graph, x, r2)
        else:
            A2 = ball(graph, x, 1.5 * r2)
            A1 = np.setdiff1d(A2, ball(graph, x, r2))
        if A1.size == 0:
            continue
        spec = CondenserSpec(ball(graph, x, r1), A1, A2)
        result = capacity(graph, spec, p, opts)
        report = check_equilibrium_identities(graph, result, spec, p, trials=params['trials'],
                                              seed=k, opts=opts)
        rows.append({'condenser': k, 'p': p, 'value': result.value, 'pairing_rel_err': report.pairing_rel_err,
                     'pairing_ok': bool(report.pairing_ok), 'support_max': report.support_max,
                     'support_ok': bool(report.support_ok), 'competitors_ok': bool(report.competitors_ok),
                     'supersolutions_ok': bool(report.supersolutions_ok)})
    criteria, details, notes = summarize_equilibrium(rows)
    return CheckOutcome('equilibrium', all(criteria.values()), criteria, details, {'equilibrium': rows}, notes)


def check_iteration_lemma(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    rng = np.random.default_rng(params['seed'])
    failures = 0
    for _ in range(params['samples']):
        c0 = 10.0 ** rng.uniform(-2.0, 2.0)
        b = float(rng.uniform(1.1, 10.0))
        beta = float(rng.uniform(0.1, 2.0))
        A0 = c0 ** (-1.0 / beta) * b ** (-1.0 / beta ** 2)
        failures += not iterate_bound(A0, c0, b, beta, params['jmax']).satisfied
    return CheckOutcome('iteration_lemma', failures == 0, {'conclusion': failures == 0}, {'failures': failures})


def harmonic_probes(graph: NetGraph, x: int, radius: float, count: int, p: float, seed: int,
                    opts: Optional[SolverOptions] = None) -> List[np.ndarray]:
    """Prolongements p-harmoniques sur B(x, radius) de données de bord aléatoires, signées ou décalées."""
    big = ball(graph, x, radius)
    ring = boundary_ring(graph, big)
    probes = []
    for k in range(count):
        rng = trial_rng(seed, k)
        g = np.zeros(graph.n)
        g[ring] = rng.normal(size=ring.size) + (rng.random() < 0.5) * 2.0
        probes.append(solve_dirichlet(DirichletProblem(graph, big, g, p), opts).u)
    return probes


def cutoff_stability(rows: List[Dict[str, Any]], factor: float) -> Tuple[Dict[str, bool], List[str]]:
    """
    Stabilité de (c1, c2) entre les rayons: la somme et chaque coordonnée
    doivent rester dans un facteur `factor`. Une coordonnée nulle à un
    rayon (sommet du programme linéaire) n'est pas comparable: elle est
    signalée dans les notes et dans les lignes, seule la somme compte.
    """
    sums = [row['c1'] + row['c2'] for row in rows]
    criteria = {'stable': _within(sums, factor)}
    notes = []
    for key in ('c1', 'c2'):
        values = [row[key] for row in rows]
        scale = max(sums) if sums else 0.0
        if all(v > 1e-12 * scale for v in values):
            criteria[f'{key}_stable'] = _within(values, factor)
        else:
            for row in rows:
                row[f'{key}_degenerate'] = True
            notes.append(f"{key} nul à un rayon (sommet du programme linéaire): comparé via c1 + c2")
    return criteria, notes


def check_cutoff(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    graph = model_graph('carpet', params['level'])
    x = graph.nearest_vertex(params['point'])
    p = params['p']
    psi_hat = _psi_hat(graph, x, params['sweep_radii'], p, opts)
    shapes, rows = [], []
    for R in params['Rs']:
        cutoff = build_cutoff(graph, x, R, psi_hat, p, opts=opts)
        probes = harmonic_probes(graph, x, 2.0 * R, params['probes'], p, params['seed'], opts)
        probes += [np.ones(graph.n), cutoff.phi]
        fit = check_cutoff_sobolev(graph, cutoff, probes, float(psi_hat(R)), p)
        shape = cutoff.energy * float(psi_hat(R)) / float(graph.phi(R))
        shapes.append(shape)
        rows.append({'R': R, 'c1': fit.c1, 'c2': fit.c2, 'c3': cutoff.c3, 'energy': cutoff.energy, 'shape': shape})
    criteria, notes = cutoff_stability(rows, params['factor'])
    criteria['finite'] = all(math.isfinite(row['c1'] + row['c2']) for row in rows)
    criteria['energy_shape'] = all(s <= params['shape_max'] for s in shapes)
    return CheckOutcome('cutoff_sobolev', all(criteria.values()), criteria, {}, {'cutoff_sobolev': rows}, notes)


def check_llc_geometry(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    criteria = {}
    lattice = model_graph('lattice2d', params['lattice_side'])
    criteria['llc_lattice2d'] = bool(check_llc(lattice, lattice.nearest_vertex([0.5, 0.5]), params['r'], params['A']))
    carpet = model_graph('carpet', params['carpet_level'])
    criteria['llc_carpet'] = bool(check_llc(carpet, carpet.nearest_vertex(params['point']), params['r'], params['A']))
    interval = model_graph('interval', params['interval_level'])
    criteria['llc_interval_fails'] = not check_llc(interval, interval.nearest_vertex([0.5]), params['r'], params['A'])
    sweep = [{'A': A, 'carpet': bool(check_llc(carpet, carpet.nearest_vertex(params['point']), params['r'], A))}
             for A in params['A_sweep']]

    graph = model_graph('carpet', params['cover_level'])
    disjoint = covered = True
    for k in range(params['families']):
        rng = trial_rng(params['seed'], k)
        balls = [(int(rng.integers(graph.n)), float(rng.uniform(0.05, 0.2))) for _ in range(params['balls'])]
        selected = greedy_5b_cover(graph, balls)
        for a, s in enumerate(selected):
            d = distances(graph, balls[s][0])
            disjoint &= all(d[balls[t][0]] >= balls[s][1] + balls[t][1] for t in selected[a + 1:])
        dilated = [as_mask(graph.n, ball(graph, balls[s][0], 5.0 * balls[s][1])) for s in selected]
        for center, r in balls:
            members = ball(graph, center, r)
            covered &= any(bool(np.all(mask[members])) for mask in dilated)
    criteria['cover_disjoint'] = bool(disjoint)
    criteria['cover_complete'] = bool(covered)
    return CheckOutcome('llc_geometry', all(criteria.values()), criteria, {}, {'llc_A_sweep': sweep})


def check_bmo(params: Dict[str, Any], opts: SolverOptions) -> CheckOutcome:
    graph = model_graph('carpet', params['level'])
    x = graph.nearest_vertex(params['point'])
    p = params['p']
    norms, invariant, rows = [], True, []
    for R in params['Rs']:
        big = ball(graph, x, 2.0 * R)
        sampler = BoundarySampler(graph, boundary_ring(graph, big), kinds=('field',))
        _, g = sampler.sample(trial_rng(params['seed'], 0))
        h = solve_dirichlet(DirichletProblem(graph, big, g, p), opts).u
        U = ball(graph, x, R)
        balls = [(x, R / 2.0)] + sample_balls(graph, U, [R / 4.0, R / 2.0], params['balls'], params['seed'])
        report = check_log_bmo(graph, h, U, balls)
        scaled = check_log_bmo(graph, params['scale_factor'] * h, U, balls)
        invariant &= abs(report.norm - scaled.norm) <= params['tol'] * max(1.0, report.norm)
        norms.append(report.norm)
        rows.append({'R': R, 'bmo': report.norm, 'bmo_scaled': scaled.norm, 'jn_rate': report.jn_rate,
                     'crossover': report.crossover})
    criteria = {
        'scale_invariant': bool(invariant),
        'finite': all(math.isfinite(v) for v in norms),
        'stable': _within(norms, params['factor']),
    }
    return CheckOutcome('bmo_log', all(criteria.values()), criteria, {}, {'bmo_log': rows})


class FunctionCheck(AcceptanceCheck):
    """Contrôle défini par une fonction et ses paramètres par défaut."""

    def __init__(self, name: str, description: str, func: Callable[[Dict[str, Any], SolverOptions], CheckOutcome],
                 defaults: Dict[str, Any], quick: Optional[Dict[str, Any]] = None):
        self.name = name
        self.description = description
        self.func = func
        self.defaults = defaults
        self.quick = quick or {}

    def params(self, config: Dict[str, Any], quick: bool = False) -> Dict[str, Any]:
        section = dict((config.get('verify') or {}).get(self.name) or {})
        overrides = section.pop('quick', {}) or {}
        params = dict(self.defaults)
        if quick:
            params.update(self.quick)
        params.update(section)
        if quick:
            params.update(overrides)
        return params

    def run(self, config: Dict[str, Any], quick: bool = False) -> CheckOutcome:
        opts = SolverOptions.from_config(config.get('solver'))
        params = self.params(config, quick)
        logger.info(f"Contrôle {self.name}: {self.description}")
        outcome = self.func(params, opts)
        outcome.details.setdefault('params', params)
        return outcome


CHECKS: List[FunctionCheck] = [
    FunctionCheck('interpolation_energy', "Égalité des énergies discrète et sur câbles",
                  check_interpolation_energy,
                  {'kind': 'carpet', 'level': 3, 'samples': 50, 'ps': [1.5, 2.0, 3.0], 'tol': 1e-12, 'seed': 0},
                  {'level': 2, 'samples': 5}),
    FunctionCheck('p2_solver_oracle', "Solveur p = 2 contre résolution linéaire directe",
                  check_p2_solver_oracle,
                  {'kind': 'carpet', 'level': 3, 'point': DEFAULT_POINT, 'radius': 0.3, 'datasets': 10,
                   'tol': 1e-8, 'time_limit': 5.0, 'seed': 0},
                  {'datasets': 2}),
    FunctionCheck('closed_forms', "Capacité et module des chemins en forme close",
                  check_closed_forms,
                  {'ns': [4, 16], 'ps': [1.5, 2.0, 3.0], 'tol': 1e-6},
                  {'ns': [4]}),
    FunctionCheck('modulus_oracle', "Plans sécants contre énumération exhaustive",
                  check_modulus_oracle,
                  {'graphs': 20, 'max_vertices': 10, 'ps': [1.5, 2.0, 3.0], 'tol': 1e-4, 'seed': 0},
                  {'graphs': 3, 'max_vertices': 7}),
    FunctionCheck('mod_cap_comparability', "Comparabilité module / capacité entre niveaux",
                  check_comparability,
                  {'levels': [3, 4], 'point': DEFAULT_POINT, 'R': 0.15, 'A': 2.0, 'p': 2.0, 'factor': 3.0},
                  {'levels': [2, 3]}),
    FunctionCheck('capacity_scaling', "Pente des capacités et beta_p estimé",
                  check_capacity_scaling,
                  {'lattice_side': 160, 'interval_level': 1024, 'spacings': [4, 8, 16, 32], 'lattice_tol': 0.15,
                   'interval_tol': 0.1, 'carpet_level': 5, 'carpet_radii': [0.05, 0.1, 0.2],
                   'ps': [1.5, 2.0, 3.0], 'A_sensitivity': [3.0], 'point': DEFAULT_POINT},
                  {'lattice_side': 48, 'interval_level': 256, 'spacings': [2, 4, 8], 'carpet_level': 3,
                   'carpet_radii': [0.1, 0.2], 'ps': [2.0], 'A_sensitivity': []}),
    FunctionCheck('wolff_bounds', "Bornes de Wolff bilatérales",
                  check_wolff,
                  {'level': 4, 'p': 2.0, 'Rs': [0.15, 0.3], 'point': DEFAULT_POINT, 'lower_min': 1.0 / 50.0,
                   'upper_max': 50.0, 'factor': 3.0},
                  {'level': 3}),
    FunctionCheck('poisson_scaling', "Échelle des solutions de Poisson",
                  check_poisson_scaling,
                  {'level': 5, 'ps': [1.5, 2.0, 3.0], 'Rs': [0.15, 0.3], 'lambdas': [0.1, 1.0],
                   'sweep_radii': [0.05, 0.1, 0.2], 'point': DEFAULT_POINT, 'factor': 3.0},
                  {'level': 3, 'ps': [2.0], 'sweep_radii': [0.1, 0.2]}),
    FunctionCheck('harnack', "Constante de Harnack elliptique",
                  check_harnack,
                  {'lattice_side': 160, 'lattice_r': [8, 16], 'carpet_level': 5, 'carpet_r': [0.1, 0.2],
                   'A_H': 4.0, 'ps': [1.5, 2.0, 3.0], 'trials': 100, 'seed': 0, 'point': DEFAULT_POINT,
                   'factor': 2.0},
                  {'lattice_side': 40, 'lattice_r': [2, 4], 'carpet_level': 3, 'ps': [2.0], 'trials': 5}),
    FunctionCheck('principles', "Principes de comparaison, du maximum, recollement, modification de Poisson",
                  check_principles,
                  {'level': 3, 'comparison': 200, 'maximum': 200, 'pasting': 50, 'modification': 50,
                   'ps': [1.5, 2.0, 3.0], 'tol': 1e-6, 'modification_tol': 1e-8, 'seed': 0},
                  {'level': 2, 'comparison': 10, 'maximum': 10, 'pasting': 5, 'modification': 5}),
    FunctionCheck('equilibrium', "Identités du potentiel d'équilibre",
                  check_equilibrium,
                  {'level': 3, 'condensers': 30, 'trials': 3, 'ps': [1.5, 2.0, 3.0], 'seed': 0},
                  {'level': 2, 'condensers': 5, 'trials': 1}),
    FunctionCheck('iteration_lemma', "Lemme d'itération au seuil",
                  check_iteration_lemma,
                  {'samples': 100, 'jmax': 30, 'seed': 0},
                  {'samples': 20}),
    FunctionCheck('cutoff_sobolev', "Constantes de l'inégalité de Sobolev avec cutoff",
                  check_cutoff,
                  {'level': 4, 'p': 2.0, 'Rs': [0.15, 0.3], 'probes': 50, 'sweep_radii': [0.05, 0.1, 0.2],
                   'point': DEFAULT_POINT, 'factor': 3.0, 'shape_max': 10.0, 'seed': 0},
                  {'level': 3, 'probes': 8, 'sweep_radii': [0.1, 0.2]}),
    FunctionCheck('llc_geometry', "LLC et recouvrement 5B",
                  check_llc_geometry,
                  {'lattice_side': 40, 'carpet_level': 4, 'interval_level': 200, 'cover_level': 3, 'r': 0.2,
                   'A': 3.0, 'A_sweep': [1.5, 2.0, 3.0, 4.0], 'families': 10, 'balls': 12,
                   'point': DEFAULT_POINT, 'seed': 0},
                  {'lattice_side': 20, 'carpet_level': 3, 'interval_level': 60, 'cover_level': 2, 'families': 3}),
    FunctionCheck('bmo_log', "BMO du logarithme d'une fonction harmonique positive",
                  check_bmo,
                  {'level': 4, 'p': 2.0, 'Rs': [0.15, 0.3], 'balls': 40, 'scale_factor': 100.0, 'tol': 1e-10,
                   'point': DEFAULT_POINT, 'factor': 3.0, 'seed': 0},
                  {'level': 3, 'balls': 10}),
]


def get_check(name: str) -> FunctionCheck:
    for check in CHECKS:
        if check.name == name:
            return check
    raise KeyError(name)
