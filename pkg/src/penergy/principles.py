"""
Principes du potentiel discret: classification (sur/sous-harmonique),
principe de comparaison, principe du maximum, modification de Poisson
et bornes du problème de Poisson perturbé.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from src.netgraph import NetGraph, as_mask, ball, boundary_ring
from src.penergy.energy import p_laplacian, signed_power
from src.penergy.solver import DirichletProblem, Solution, SolverOptions, solve_dirichlet, solve_poisson
from src.scaling import PowerScaling
from src.utils.exceptions import InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('principles', 'solver.log')

# Tolérance des tests de principe, distincte de celle du solveur
PRINCIPLE_TOL = 1e-8

LABELS = ('harmonic', 'superharmonic', 'subharmonic', 'none')


def _scale(graph: NetGraph, u: np.ndarray, p: float) -> float:
    return graph.conductance_factor * max(1.0, float(np.max(np.abs(u)))) ** (p - 1.0)


def classify(graph: NetGraph, u: np.ndarray, p: float, U: Iterable[int],
             tol: float = PRINCIPLE_TOL) -> np.ndarray:
    """
    Étiquette chaque sommet selon le signe de -Delta_p u (relatif à tol).

    Returns:
        np.ndarray: Tableau de chaînes parmi LABELS ('none' hors de U)
    """
    u = np.asarray(u, dtype=float)
    mu = -p_laplacian(graph, u, p)
    threshold = tol * _scale(graph, u, p)
    labels = np.full(graph.n, 'none', dtype=object)
    inside = as_mask(graph.n, U)
    labels[inside & (np.abs(mu) <= threshold)] = 'harmonic'
    labels[inside & (mu > threshold)] = 'superharmonic'
    labels[inside & (mu < -threshold)] = 'subharmonic'
    return labels


def is_superharmonic(graph: NetGraph, u: np.ndarray, p: float, U: Iterable[int],
                     tol: float = PRINCIPLE_TOL) -> bool:
    labels = classify(graph, u, p, U, tol)[as_mask(graph.n, U)]
    return bool(np.all(labels != 'subharmonic'))


def is_subharmonic(graph: NetGraph, u: np.ndarray, p: float, U: Iterable[int],
                   tol: float = PRINCIPLE_TOL) -> bool:
    labels = classify(graph, u, p, U, tol)[as_mask(graph.n, U)]
    return bool(np.all(labels != 'superharmonic'))


@dataclass
class ComparisonResult:
    status: str
    margin: float
    precondition_ok: bool

    @property
    def holds(self) -> bool:
        return self.status == 'holds'

    def __bool__(self) -> bool:
        return self.holds


def check_comparison(graph: NetGraph, u: np.ndarray, v: np.ndarray, U: Iterable[int], p: float,
                     lam: float = 0.0, tol: float = PRINCIPLE_TOL) -> ComparisonResult:
    """
    Principe de comparaison: si -Delta_p u + lambda m|u|^(p-2)u >= (idem pour v)
    sur U et u >= v sur le bord, alors u >= v sur U.

    Returns:
        ComparisonResult: 'holds', 'violated' ou 'inconclusive' (hypothèses non satisfaites)
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    inside = as_mask(graph.n, U)
    ring = boundary_ring(graph, inside)
    m = graph.vertex_mass

    def operator(w):
        return -p_laplacian(graph, w, p) + lam * m * signed_power(w, p - 1.0)

    scale = max(_scale(graph, u, p), _scale(graph, v, p))
    gap = (operator(u) - operator(v))[inside]
    precondition = bool(np.all(gap >= -tol * scale)) and bool(np.all(u[ring] >= v[ring] - tol))
    margin = float(np.min(u[inside] - v[inside])) if inside.any() else 0.0
    if not precondition:
        return ComparisonResult('inconclusive', margin, False)
    return ComparisonResult('holds' if margin >= -tol else 'violated', margin, True)


def check_maximum_principle(graph: NetGraph, u: np.ndarray, U: Iterable[int],
                            tol: float = PRINCIPLE_TOL) -> bool:
    """min_bord u - tol <= u <= max_bord u + tol sur U."""
    inside = as_mask(graph.n, U)
    ring = boundary_ring(graph, inside)
    if ring.size == 0:
        raise InputError("Bord vide")
    lo, hi = float(np.min(u[ring])), float(np.max(u[ring]))
    values = np.asarray(u)[inside]
    return bool(np.all(values >= lo - tol) and np.all(values <= hi + tol))


def poisson_modification(graph: NetGraph, u: np.ndarray, U: Iterable[int], K: Iterable[int], p: float,
                         opts: Optional[SolverOptions] = None) -> Solution:
    """
    Modification de Poisson: u est remplacée sur U \\ K par la solution
    p-harmonique ayant les valeurs de u comme données de bord.

    Returns:
        Solution: Fonction modifiée (égale à u hors de U \\ K)
    """
    u = np.asarray(u, dtype=float)
    domain = as_mask(graph.n, U) & ~as_mask(graph.n, K)
    if not domain.any():
        raise InputError("U \\ K est vide")
    sol = solve_dirichlet(DirichletProblem(graph, np.flatnonzero(domain), u, p), opts)
    modified = u.copy()
    modified[domain] = sol.u[domain]
    return Solution(modified, sol.iterations, sol.final_energy, sol.kkt_residual, sol.objective, sol.method)


@dataclass
class PoissonLambdaRow:
    lam: float
    max_u: float
    upper_bound: float
    upper_holds: bool
    inf_half: float
    lower_ratio: float


@dataclass
class PoissonLambdaReport:
    center: int
    R: float
    p: float
    rows: List[PoissonLambdaRow] = field(default_factory=list)

    @property
    def upper_holds(self) -> bool:
        return all(row.upper_holds for row in self.rows)


def check_poisson_lambda(graph: NetGraph, center: int, R: float, lambdas: Sequence[float], p: float,
                         psi_hat: PowerScaling, opts: Optional[SolverOptions] = None,
                         tol: float = PRINCIPLE_TOL) -> PoissonLambdaReport:
    """
    Pour -Delta_p u + lambda m|u|^(p-2)u = m sur B(center, R):
    borne supérieure max u <= lambda^(-1/(p-1)) et rapport inférieur
    inf_{B/2} u (1 + lambda Psi(R))^(1/(p-1)) / Psi(R)^(1/(p-1)).
    """
    U = ball(graph, center, R)
    half = ball(graph, center, R / 2.0)
    report = PoissonLambdaReport(int(center), float(R), float(p))
    psi_r = float(psi_hat(R))
    for lam in lambdas:
        sol = solve_poisson(graph, U, 1.0, p, lam=lam, opts=opts)
        max_u = float(np.max(sol.u[U]))
        bound = float(lam ** (-1.0 / (p - 1.0))) if lam > 0 else float('inf')
        inf_half = float(np.min(sol.u[half]))
        ratio = inf_half * (1.0 + lam * psi_r) ** (1.0 / (p - 1.0)) / psi_r ** (1.0 / (p - 1.0))
        report.rows.append(PoissonLambdaRow(float(lam), max_u, bound, max_u <= bound * (1.0 + tol) + tol,
                                            inf_half, float(ratio)))
        logger.info(f"Poisson lambda={lam}: max u={max_u:.6g}, borne={bound:.6g}")
    return report


def check_pasting(graph: NetGraph, u1: np.ndarray, u2: np.ndarray, U2: Iterable[int], p: float,
                  tol: float = PRINCIPLE_TOL) -> Dict[str, bool]:
    """Le minimum de deux fonctions surharmoniques est surharmonique sur U2."""
    w = np.minimum(np.asarray(u1, dtype=float), np.asarray(u2, dtype=float))
    return {'superharmonic': is_superharmonic(graph, w, p, U2, tol)}
