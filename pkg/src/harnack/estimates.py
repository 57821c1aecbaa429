"""
Estimations empiriques: constante de Harnack elliptique, inégalités de la
valeur moyenne, lemme de croissance et Harnack faible.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from src.harnack.sampling import BoundarySampler, trial_rng
from src.netgraph import NetGraph, ball, ball_fits, boundary_ring
from src.penergy import DirichletProblem, SolverOptions, solve_dirichlet
from src.utils.exceptions import ConvergenceError, DomainError, GeometryError, InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('harnack', 'harnack.log')

DELTA_SHIFT = 1e-12


@dataclass
class HarnackTrial:
    trial: int
    kind: str
    sup: float
    inf: float
    ratio: float


@dataclass
class HarnackReport:
    center: int
    r: float
    A_H: float
    p: float
    trials: List[HarnackTrial]
    C_H_hat: float
    delta_shift: float
    skipped: List[str] = field(default_factory=list)

    @property
    def ratios(self) -> List[float]:
        return [t.ratio for t in self.trials]

    def to_dict(self) -> Dict:
        return {
            'center': self.center,
            'r': self.r,
            'A_H': self.A_H,
            'p': self.p,
            'C_H_hat': self.C_H_hat,
            'delta_shift': self.delta_shift,
            'trials': [t.__dict__ for t in self.trials],
            'skipped': self.skipped,
        }


def estimate_harnack(graph: NetGraph, center: int, r: float, A_H: float = 4.0, trials: int = 100,
                     seed: int = 0, delta: float = DELTA_SHIFT, p: float = 2.0,
                     opts: Optional[SolverOptions] = None, workers: int = 1,
                     sampler: Optional[Callable[[np.random.Generator, int], Tuple[str, np.ndarray]]] = None,
                     fit_policy: str = 'complement') -> HarnackReport:
    """
    Estime C_H = max sup_B h / inf_B h sur des fonctions p-harmoniques
    positives dans B(center, A_H r), B = B(center, r).

    Chaque essai tire des données de bord positives sur le bord de la grande
    boule, résout le problème de Dirichlet puis ajoute delta * max(données).

    Args:
        sampler: Tirage personnalisé (rng, essai) -> (type, données de bord)
        fit_policy (str): Critère de ball_fits pour B(center, A_H r) ('complement' ou 'box')

    Raises:
        DomainError: r <= 0 ou A_H < 1
        GeometryError: B(center, A_H r) ne tient pas dans le nuage, ou bord vide
    """
    if not r > 0 or not A_H >= 1:
        raise DomainError(f"Il faut r > 0 et A_H >= 1 (r={r}, A_H={A_H})")
    if not ball_fits(graph, center, A_H * r, fit_policy):
        raise GeometryError(f"B(x, {A_H}r) ne tient pas dans le nuage (politique {fit_policy})")
    big = ball(graph, center, A_H * r)
    small = ball(graph, center, r)
    ring = boundary_ring(graph, big)
    if ring.size == 0:
        raise GeometryError(f"B(x, {A_H}r) recouvre tout le graphe: pas de bord")
    if sampler is None:
        boundary = BoundarySampler(graph, ring)
        sampler = lambda rng, k: boundary.sample(rng)  # noqa: E731

    def one(k):
        kind, g = sampler(trial_rng(seed, k), k)
        top = float(np.max(g))
        if not top > 0:
            return None, f"essai {k}: données nulles"
        try:
            u = solve_dirichlet(DirichletProblem(graph, big, g, p), opts).u
        except ConvergenceError as e:
            return None, f"essai {k}: {e}"
        h = u[small] + delta * top
        sup, inf = float(h.max()), float(h.min())
        return HarnackTrial(k, kind, sup, inf, sup / inf if inf > 0 else float('inf')), None

    label = f"Harnack r={r}"
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(tqdm(pool.map(one, range(trials)), total=trials, desc=label, leave=False))
    else:
        outcomes = [one(k) for k in tqdm(range(trials), desc=label, leave=False)]

    done = [t for t, _ in outcomes if t is not None]
    skipped = [note for _, note in outcomes if note is not None]
    for note in skipped:
        logger.warning(f"Harnack: {note}")
    C_H = max((t.ratio for t in done), default=float('nan'))
    logger.info(f"Harnack en x={center}, r={r}, p={p}: C_H estimé {C_H:.4g} sur {len(done)} essais")
    return HarnackReport(int(center), float(r), float(A_H), float(p), done, float(C_H), float(delta), skipped)


@dataclass
class MeanValueReport:
    ratio: float
    q: float
    theta: float
    degenerate: bool


def mean_value_ratio(graph: NetGraph, u: np.ndarray, center: int, R: float, q: float) -> Tuple[float, bool]:
    """sup_{B(x,R/4)} u^q m(B(x,R)) / somme_{B(x,R)} u^q m."""
    B = ball(graph, center, R)
    inner = ball(graph, center, R / 4.0)
    uq = np.abs(np.asarray(u, dtype=float)) ** q
    denom = graph.vertex_mass * float(uq[B].sum())
    if denom == 0:
        return float('nan'), True
    return float(uq[inner].max()) * graph.mass(B) / denom, False


def check_mean_value(graph: NetGraph, U: np.ndarray, g: np.ndarray, center: int, R: float, p: float,
                     q: float = 2.0, theta: float = 0.0,
                     opts: Optional[SolverOptions] = None) -> MeanValueReport:
    """
    Inégalité de la valeur moyenne L^q pour u = (h - theta)_+, h p-harmonique
    sur U de données g; u est alors sous-harmonique positive.
    """
    if not q > 0:
        raise InputError(f"q doit être > 0 (reçu {q})")
    h = solve_dirichlet(DirichletProblem(graph, U, g, p), opts).u
    u = np.maximum(h - theta, 0.0)
    ratio, degenerate = mean_value_ratio(graph, u, center, R, q)
    return MeanValueReport(ratio, float(q), float(theta), degenerate)


@dataclass
class GrowthReport:
    density: float
    eps_fraction: float
    delta_hat: float
    status: str

    @property
    def holds(self) -> bool:
        return self.status == 'holds'


def check_growth_lemma(graph: NetGraph, u: np.ndarray, center: int, R: float, a: float,
                       eps_fraction: float = 0.5) -> GrowthReport:
    """
    Lemme de croissance: si m(B n {u >= a}) >= eps m(B), alors
    inf_{B/2} u >= delta a. Retourne delta_hat = inf_{B/2} u / a.
    """
    if not a > 0:
        raise InputError(f"a doit être > 0 (reçu {a})")
    u = np.asarray(u, dtype=float)
    B = ball(graph, center, R)
    density = float(np.mean(u[B] >= a))
    delta_hat = float(u[ball(graph, center, R / 2.0)].min()) / a
    if density < eps_fraction:
        status = 'inconclusive'
    else:
        status = 'holds' if delta_hat > 0 else 'violated'
    return GrowthReport(density, float(eps_fraction), delta_hat, status)


@dataclass
class WeakHarnackReport:
    ratios: Dict[float, float]
    ok: bool


def check_weak_harnack(graph: NetGraph, u: np.ndarray, center: int, R: float,
                       q_values: Sequence[float] = (0.25, 0.5, 1.0)) -> WeakHarnackReport:
    """
    Harnack faible pour u >= 0 surharmonique:
    inf_{B/2} u^q m(B) / somme_B u^q m pour chaque q.
    """
    u = np.asarray(u, dtype=float)
    B = ball(graph, center, R)
    half = ball(graph, center, R / 2.0)
    ratios = {}
    for q in q_values:
        uq = np.abs(u) ** q
        denom = graph.vertex_mass * float(uq[B].sum())
        ratios[float(q)] = float(uq[half].min()) * graph.mass(B) / denom if denom > 0 else float('nan')
    ok = all(np.isfinite(v) and v > 0 for v in ratios.values())
    return WeakHarnackReport(ratios, bool(ok))
