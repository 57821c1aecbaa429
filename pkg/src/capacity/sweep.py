"""
Balayages de capacité en fonction du rayon: estimation de beta_p,
fonction d'échelle Psi estimée, bornes de capacité et anneaux emboîtés.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from src.capacity.condenser import CondenserSpec, capacity
from src.netgraph import NetGraph, ball, ball_fits, outside_ball
from src.penergy import SolverOptions, energy
from src.scaling import LogLogFit, PowerScaling, loglog_fit
from src.utils.exceptions import GeometryError, InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('capacity_sweep', 'capacity.log')


@dataclass
class SweepRow:
    r: float
    cap: float
    mu_ball: float
    wolff_term: float
    beta_hat_running: float


@dataclass
class ScalingSweepResult:
    """
    Résultat d'un balayage cap(B(x, r), X \\ B(x, A r)) en r.

    La pente s de log cap en log r donne beta_hat = d_h - s. La fonction
    Psi estimée est Phi(r) / (exp(a) r^s), où a est l'ordonnée à l'origine,
    ramenée au facteur de conductance du graphe sur lequel on l'utilise.
    """

    center: int
    A: float
    p: float
    d_h: float
    rows: List[SweepRow]
    fit: LogLogFit
    beta_hat: float
    conductance_factor: float
    phi_coeff: float
    skipped: List[float] = field(default_factory=list)
    sensitivity: Dict[float, float] = field(default_factory=dict)

    @property
    def slope(self) -> float:
        return self.fit.slope

    def psi_hat(self, graph: Optional[NetGraph] = None) -> PowerScaling:
        intercept = self.fit.intercept
        if graph is not None:
            intercept += math.log(graph.conductance_factor / self.conductance_factor)
        return PowerScaling(self.beta_hat, self.phi_coeff * math.exp(-intercept), 'walk')

    def calibrated_graph(self, graph: NetGraph) -> NetGraph:
        """Graphe reconstruit avec Psi(r) = r^beta_hat."""
        return graph.with_psi(PowerScaling(self.beta_hat, 1.0, 'walk'))

    def table(self) -> List[dict]:
        return [row.__dict__.copy() for row in self.rows]


def _sweep_caps(graph: NetGraph, center: int, radii: Sequence[float], A: float, p: float,
                opts: Optional[SolverOptions], policy: str, workers: int, label: str):
    valid = [r for r in radii if ball_fits(graph, center, A * r, policy)]
    skipped = [r for r in radii if r not in valid]
    for r in skipped:
        logger.warning(f"Rayon {r} ignoré: B(x, {A}r) sort du nuage")

    def one(r):
        spec = CondenserSpec(ball(graph, center, r), outside_ball(graph, center, A * r))
        return capacity(graph, spec, p, opts).value

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            caps = list(tqdm(pool.map(one, valid), total=len(valid), desc=label, leave=False))
    else:
        caps = [one(r) for r in tqdm(valid, desc=label, leave=False)]
    return valid, caps, skipped


def capacity_scaling_sweep(graph: NetGraph, center: int, radii: Sequence[float], A: float = 2.0,
                           p: float = 2.0, opts: Optional[SolverOptions] = None, policy: str = 'complement',
                           sensitivity: Sequence[float] = (), workers: int = 1) -> ScalingSweepResult:
    """
    Capacités des boules B(x, r) relativement à X \\ B(x, A r) et estimation de beta_p.

    Args:
        graph (NetGraph): Graphe
        center (int): Sommet centre
        radii: Rayons
        A (float): Facteur de dilatation (> 1)
        p (float): Exposant
        opts (SolverOptions): Options du solveur
        policy (str): Politique de bord ('complement' ou 'box')
        sensitivity: Autres valeurs de A pour lesquelles rapporter beta_hat
        workers (int): Nombre de threads

    Returns:
        ScalingSweepResult: Tableau, ajustement log-log et beta_hat

    Raises:
        GeometryError: Moins de deux rayons exploitables
    """
    if not A > 1:
        raise InputError(f"A doit être > 1 (reçu {A})")
    radii = sorted(float(r) for r in radii)
    d_h = graph.phi.exponent
    valid, caps, skipped = _sweep_caps(graph, center, radii, A, p, opts, policy, workers, f"cap A={A}")
    if len([c for c in caps if c > 0]) < 2:
        raise GeometryError("Moins de deux rayons exploitables pour le balayage de capacité")

    rows = []
    for k, (r, cap) in enumerate(zip(valid, caps)):
        mu_ball = graph.mass(ball(graph, center, r))
        term = (mu_ball / cap) ** (1.0 / (p - 1.0)) if cap > 0 else float('inf')
        running = float('nan')
        if k >= 1 and all(c > 0 for c in caps[:k + 1]):
            running = d_h - loglog_fit(list(zip(valid[:k + 1], caps[:k + 1]))).slope
        rows.append(SweepRow(r, cap, mu_ball, term, running))

    fit = loglog_fit([(r, c) for r, c in zip(valid, caps) if c > 0])
    beta_hat = d_h - fit.slope
    logger.info(f"Balayage de capacité: pente {fit.slope:.4f}, beta_hat {beta_hat:.4f} (A={A}, p={p})")

    result = ScalingSweepResult(
        center=int(center), A=float(A), p=float(p), d_h=d_h, rows=rows, fit=fit, beta_hat=beta_hat,
        conductance_factor=graph.conductance_factor, phi_coeff=graph.phi.coeff, skipped=skipped,
    )
    result.sensitivity[float(A)] = beta_hat
    for other in sensitivity:
        if float(other) == float(A):
            continue
        o_valid, o_caps, _ = _sweep_caps(graph, center, radii, other, p, opts, policy, workers, f"cap A={other}")
        pairs = [(r, c) for r, c in zip(o_valid, o_caps) if c > 0]
        result.sensitivity[float(other)] = d_h - loglog_fit(pairs).slope if len(pairs) >= 2 else float('nan')
    return result


@dataclass
class CapacityBoundsReport:
    radii: List[float]
    ratios: List[float]
    band: tuple
    drift: float


def check_capacity_bounds(graph: NetGraph, center: int, radii: Sequence[float], A: float, p: float,
                          psi_hat: PowerScaling, opts: Optional[SolverOptions] = None) -> CapacityBoundsReport:
    """
    Rapport normalisé cap(B(x,r), X \\ B(x,Ar)) Psi(r) / m(B(x,r)) pour chaque r.
    Les deux bornes de capacité prédisent une bande fixe.
    """
    ratios, used = [], []
    for r in sorted(radii):
        complement = outside_ball(graph, center, A * r)
        if complement.size == 0:
            continue
        cap = capacity(graph, CondenserSpec(ball(graph, center, r), complement), p, opts).value
        ratios.append(cap * float(psi_hat(r)) / graph.mass(ball(graph, center, r)))
        used.append(float(r))
    if not ratios:
        raise GeometryError("Aucun rayon exploitable")
    band = (min(ratios), max(ratios))
    return CapacityBoundsReport(used, ratios, band, band[1] / band[0] if band[0] > 0 else float('inf'))


@dataclass
class NestedAnnuliReport:
    radii: List[float]
    caps: List[float]
    total_cap: float
    overlap: int
    average_energy: float
    bound: float
    holds: bool


def nested_annuli_bound(graph: NetGraph, center: int, radii: Sequence[float], p: float,
                        opts: Optional[SolverOptions] = None, tol: float = 1e-9) -> NestedAnnuliReport:
    """
    Capacité à travers M anneaux emboîtés r_0 < ... < r_M comparée à la
    moyenne des potentiels d'équilibre de chaque anneau:

        cap(B(r_0), X \\ B(r_M)) <= k^(p-1) M^(-p) sum_n cap_n

    où k est le nombre maximal de potentiels non constants sur une même arête.
    """
    radii = sorted(float(r) for r in radii)
    M = len(radii) - 1
    if M < 1:
        raise InputError("Il faut au moins deux rayons")
    caps, potentials = [], []
    for r_in, r_out in zip(radii[:-1], radii[1:]):
        res = capacity(graph, CondenserSpec(ball(graph, center, r_in), outside_ball(graph, center, r_out)), p, opts)
        caps.append(res.value)
        potentials.append(res.potential)
    total = capacity(graph, CondenserSpec(ball(graph, center, radii[0]),
                                          outside_ball(graph, center, radii[-1])), p, opts).value

    i, j = graph.edges[:, 0], graph.edges[:, 1]
    changing = np.zeros(graph.m, dtype=np.int64)
    for phi in potentials:
        changing += np.abs(phi[i] - phi[j]) > 0
    k = max(1, int(changing.max(initial=1)))
    bound = k ** (p - 1.0) * M ** (-p) * float(sum(caps))
    average_energy = energy(graph, np.mean(potentials, axis=0), p)
    logger.debug(f"Anneaux emboîtés: cap={total:.6g}, E(moyenne)={average_energy:.6g}, borne={bound:.6g}")
    return NestedAnnuliReport(radii, caps, total, k, average_energy, bound, total <= bound * (1.0 + tol))
