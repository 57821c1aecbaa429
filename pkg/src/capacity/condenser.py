"""
Capacité d'un condensateur (A0, A1; A2) et potentiel d'équilibre.

Le potentiel vaut 1 sur A0 (le compact K), 0 sur A1 et minimise la
p-énergie restreinte aux arêtes de A2; il est nul hors de A2.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from src.netgraph import NetGraph, as_mask, induced_components
from src.penergy import SolverOptions, VariationalProblem, energy, p_laplacian, solve_variational
from src.utils.exceptions import InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('capacity', 'capacity.log')


@dataclass
class CondenserSpec:
    """
    Condensateur: plaque A0 (potentiel 1), plaque A1 (potentiel 0),
    ensemble ambiant A2 (None = tous les sommets).
    """

    A0: np.ndarray
    A1: np.ndarray
    A2: Optional[np.ndarray] = None

    def masks(self, n: int):
        a0, a1 = as_mask(n, self.A0), as_mask(n, self.A1)
        a2 = as_mask(n, self.A2)
        if not a0.any() or not a1.any():
            raise InputError("Les deux plaques du condensateur doivent être non vides")
        if np.any(a0 & a1):
            raise InputError("Les plaques A0 et A1 se recouvrent")
        if np.any((a0 | a1) & ~a2):
            raise InputError("Les plaques doivent être incluses dans A2")
        return a0, a1, a2

    def swapped(self) -> 'CondenserSpec':
        return CondenserSpec(self.A1, self.A0, self.A2)


@dataclass
class CapacityResult:
    value: float
    potential: np.ndarray
    kkt_residual: float = 0.0
    iterations: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'value': self.value,
            'potential': self.potential.tolist(),
            'kkt_residual': self.kkt_residual,
            'iterations': self.iterations,
        }


def capacity(graph: NetGraph, spec: CondenserSpec, p: float,
             opts: Optional[SolverOptions] = None) -> CapacityResult:
    """
    Capacité cap(A0, A1; A2) et potentiel d'équilibre.

    Chaque composante connexe de A2 est traitée séparément: résolution si
    elle touche les deux plaques, potentiel 1 si elle ne touche que A0,
    0 sinon. La capacité est nulle si et seulement si aucun chemin dans A2
    ne relie les plaques.

    Raises:
        InputError: Plaques vides, qui se recouvrent ou hors de A2
    """
    a0, a1, a2 = spec.masks(graph.n)
    labels = induced_components(graph, a2)
    free_all = a2 & ~a0 & ~a1

    with_a0 = np.unique(labels[a0])
    with_a1 = np.unique(labels[a1])
    both = np.intersect1d(with_a0, with_a1)
    only_a0 = np.setdiff1d(with_a0, with_a1)

    e = np.zeros(graph.n)
    e[a0] = 1.0
    e[free_all & np.isin(labels, only_a0)] = 1.0

    solve_mask = free_all & np.isin(labels, both)
    residual, iterations = 0.0, 0
    if solve_mask.any():
        problem = VariationalProblem(graph, p, solve_mask, a0 | a1, e)
        sol = solve_variational(problem, opts)
        e[solve_mask] = sol.u[solve_mask]
        residual, iterations = sol.kkt_residual, sol.iterations

    value = energy(graph, e, p, A=a2)
    logger.debug(f"Capacité: {value:.12g} ({int(solve_mask.sum())} sommets libres)")
    return CapacityResult(value, e, residual, iterations)


@dataclass
class EquilibriumReport:
    support_ok: bool
    support_max: float
    pairing_ok: bool
    pairing_value: float
    pairing_rel_err: float
    competitors_ok: bool
    competitor_max: float
    supersolutions_ok: bool
    supersolution_min: float
    trials: int = 0
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.support_ok and self.pairing_ok and self.competitors_ok and self.supersolutions_ok


def _random_source(rng: np.random.Generator, mask: np.ndarray) -> np.ndarray:
    nu = np.zeros(mask.size)
    idx = np.flatnonzero(mask)
    if idx.size:
        nu[idx] = rng.exponential(1.0, idx.size) * (rng.random(idx.size) < 0.5)
        nu[idx[rng.integers(idx.size)]] += 1.0
    return nu


def check_equilibrium_identities(graph: NetGraph, result: CapacityResult, spec: CondenserSpec, p: float,
                                 trials: int = 20, seed: int = 0, tol: float = 1e-8,
                                 rel_tol: float = 1e-6, opts: Optional[SolverOptions] = None) -> EquilibriumReport:
    """
    Vérifie les identités du potentiel d'équilibre e:

    (i) mu[e] est nulle hors des plaques; (ii) mu[e](A0) = capacité;
    (iii) mu[u](A0) <= capacité pour des compétiteurs u <= 1 dont la mesure
    de Riesz est portée par A0; (iv) mu[v](A2 \\ A1) >= capacité pour des
    solutions v surharmoniques, >= 1 sur A0 et nulles sur A1.
    """
    a0, a1, a2 = spec.masks(graph.n)
    e = result.potential
    value = result.value
    c = graph.conductance_factor
    mu = -p_laplacian(graph, e, p, within=a2)

    free = a2 & ~a0 & ~a1
    support_max = float(np.max(np.abs(mu[free]), initial=0.0))
    support_ok = support_max <= tol * c
    pairing = float(mu[a0].sum())
    rel_err = abs(pairing - value) / max(abs(value), np.finfo(float).tiny) if value > 0 else abs(pairing) / c
    pairing_ok = rel_err <= rel_tol

    labels = induced_components(graph, a2)
    grounded = a2 & np.isin(labels, np.unique(labels[a1]))
    rng = np.random.default_rng(seed)
    competitor_max, supersolution_min = 0.0, float('inf')
    competitors_ok = supersolutions_ok = True
    notes = []
    slack = rel_tol * max(value, 0.0) + tol * c

    sources = grounded & a0
    if not sources.any():
        notes.append("aucune plaque A0 reliée à A1: compétiteurs vacants")
    for _ in range(trials if sources.any() else 0):
        nu = _random_source(rng, sources)
        problem = VariationalProblem(graph, p, grounded & ~a1, a1, np.zeros(graph.n), 0.0, nu / graph.vertex_mass)
        u = solve_variational(problem, opts).u
        top = float(u.max())
        if top <= 0:
            continue
        u = u / top
        mu_u = -p_laplacian(graph, u, p, within=a2)
        competitor_max = max(competitor_max, float(mu_u[a0].sum()))
        competitors_ok &= float(mu_u[a0].sum()) <= value + slack

        nu = _random_source(rng, grounded & ~a1)
        problem = VariationalProblem(graph, p, grounded & ~a1, a1, np.zeros(graph.n), 0.0, nu / graph.vertex_mass)
        v = solve_variational(problem, opts).u
        bottom = float(v[sources].min())
        if bottom <= 0:
            notes.append("sursolution nulle sur A0 ignorée")
            continue
        v = v / bottom
        mass = float((-p_laplacian(graph, v, p, within=a2))[grounded & ~a1].sum())
        supersolution_min = min(supersolution_min, mass)
        supersolutions_ok &= mass >= value - slack

    return EquilibriumReport(
        support_ok=bool(support_ok),
        support_max=support_max,
        pairing_ok=bool(pairing_ok),
        pairing_value=pairing,
        pairing_rel_err=float(rel_err),
        competitors_ok=bool(competitors_ok),
        competitor_max=competitor_max,
        supersolutions_ok=bool(supersolutions_ok),
        supersolution_min=supersolution_min,
        trials=trials,
        notes=notes,
    )
