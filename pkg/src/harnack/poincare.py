"""
Minoration de la constante de Poincaré par sondes, et calcul exact pour p = 2
sur le sous-graphe induit par la boule (problème de Neumann discret).
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy import sparse

from src.capacity import CondenserSpec, capacity
from src.netgraph import NetGraph, as_mask, ball, boundary_ring, outside_ball
from src.penergy import DirichletProblem, SolverOptions, energy, solve_dirichlet
from src.scaling import PowerScaling
from src.utils.exceptions import ConvergenceError, InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('poincare', 'harnack.log')

# Taille maximale du calcul dense de la valeur propre de Neumann
DENSE_LIMIT = 4000


@dataclass
class PoincareReport:
    center: int
    r: float
    A_PI: float
    C_hat: float
    best_probe: str
    ratios: List[Tuple[str, float]] = field(default_factory=list)
    exact: Optional[float] = None


def make_probes(graph: NetGraph, center: int, r: float, A_PI: float, p: float, count: int = 8,
                seed: int = 0, opts: Optional[SolverOptions] = None) -> List[Tuple[str, np.ndarray]]:
    """
    Famille de sondes: coordonnées, champs de Fourier basse fréquence,
    prolongements harmoniques de données aléatoires et potentiels de capacité.
    """
    rng = np.random.default_rng(seed)
    probes = [(f'coord{k}', graph.coords[:, k].copy()) for k in range(graph.coords.shape[1])]

    for k in range(count):
        freq = rng.normal(0.0, np.pi / r, size=graph.coords.shape[1])
        probes.append((f'fourier{k}', np.cos(graph.coords @ freq + rng.uniform(0, 2 * np.pi))))

    big = ball(graph, center, A_PI * r)
    ring = boundary_ring(graph, big)
    if ring.size:
        for k in range(max(1, count // 2)):
            g = np.zeros(graph.n)
            g[ring] = rng.normal(size=ring.size)
            try:
                probes.append((f'harmonic{k}', solve_dirichlet(DirichletProblem(graph, big, g, p), opts).u))
            except ConvergenceError as e:
                logger.warning(f"Sonde harmonique {k} ignorée: {e}")

    grounded = outside_ball(graph, center, r)
    if grounded.size:
        for frac in (0.25, 0.5):
            spec = CondenserSpec(ball(graph, center, frac * r), grounded)
            probes.append((f'capacity{frac}', capacity(graph, spec, p, opts).potential))
    return probes


def neumann_constant(graph: NetGraph, vertices: np.ndarray, psi_r: float) -> float:
    """
    Constante de Poincaré exacte pour p = 2 sur le sous-graphe induit:
    1 / (lambda_2 Psi(r)), lambda_2 plus petite valeur propre non nulle de L v = lambda M v.
    """
    vertices = np.flatnonzero(as_mask(graph.n, vertices))
    if vertices.size < 2:
        raise InputError("Au moins deux sommets sont nécessaires")
    if vertices.size > DENSE_LIMIT:
        raise InputError(f"Boule trop grande pour le calcul dense ({vertices.size} sommets)")
    sub = graph.adjacency[vertices][:, vertices]
    W = (sub > 0).astype(float) * graph.conductance_factor
    L = (sparse.diags(np.asarray(W.sum(axis=1)).ravel()) - W).toarray()
    M = np.eye(vertices.size) * graph.vertex_mass
    lam2 = scipy.linalg.eigh(L, M, eigvals_only=True, subset_by_index=[1, 1])[0]
    return 1.0 / (lam2 * psi_r) if lam2 > 1e-14 * graph.conductance_factor / graph.vertex_mass else float('inf')


def poincare_ratio(graph: NetGraph, f: np.ndarray, B: np.ndarray, big: np.ndarray, p: float, psi_r: float) -> float:
    values = f[B]
    lhs = graph.vertex_mass * float(np.sum(np.abs(values - values.mean()) ** p))
    if lhs <= 1e-14 * graph.vertex_mass * values.size * max(1.0, float(np.abs(values).max())) ** p:
        return float('nan')
    E = energy(graph, f, p, A=big)
    return lhs / (psi_r * E) if E > 0 else float('inf')


def estimate_poincare(graph: NetGraph, center: int, r: float, A_PI: float, psi_hat: PowerScaling, p: float,
                      probes: Optional[Sequence[Tuple[str, np.ndarray]]] = None, exact: bool = True,
                      opts: Optional[SolverOptions] = None, seed: int = 0) -> PoincareReport:
    """
    C_PI_hat = max sur les sondes de
        somme_B m |f - f_B|^p / (Psi(r) E_{A_PI B}(f)),
    minorant certifié de la constante de Poincaré. Pour p = 2 et exact=True,
    la constante exacte sur le sous-graphe induit par B est jointe.

    Raises:
        InputError: Toutes les sondes sont constantes sur B
    """
    B = ball(graph, center, r)
    big = ball(graph, center, A_PI * r)
    psi_r = float(psi_hat(r))
    if probes is None:
        probes = make_probes(graph, center, r, A_PI, p, seed=seed, opts=opts)

    ratios = []
    for name, f in probes:
        ratio = poincare_ratio(graph, np.asarray(f, dtype=float), B, big, p, psi_r)
        if np.isfinite(ratio):
            ratios.append((name, float(ratio)))
    if not ratios:
        raise InputError("Toutes les sondes sont constantes sur la boule")
    name, C_hat = max(ratios, key=lambda item: item[1])

    exact_value = None
    if exact and p == 2.0 and B.size <= DENSE_LIMIT:
        exact_value = neumann_constant(graph, B, psi_r)
    logger.info(f"Poincaré en x={center}, r={r}: C_PI estimé {C_hat:.4g} (sonde {name})")
    return PoincareReport(int(center), float(r), float(A_PI), C_hat, name, ratios, exact_value)
