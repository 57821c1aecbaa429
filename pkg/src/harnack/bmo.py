"""
Semi-norme BMO sur des boules intrinsèques et contrôle de log h pour h
surharmonique positive (décroissance de John-Nirenberg, produit croisé).
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.netgraph import NetGraph, as_mask, ball
from src.utils.exceptions import InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('bmo', 'harnack.log')


@dataclass
class BmoReport:
    norm: float
    balls: List[Tuple[int, float]]
    worst_ball: Tuple[int, float]
    jn_rate: Optional[float] = None
    crossover: Optional[float] = None


def sample_balls(graph: NetGraph, U: np.ndarray, radii: Sequence[float], count: int,
                 seed: int = 0) -> List[Tuple[int, float]]:
    """Tire des boules (centre, rayon) à centres dans U, incluses dans U."""
    inside = as_mask(graph.n, U)
    centers = np.flatnonzero(inside)
    if centers.size == 0:
        return []
    rng = np.random.default_rng(seed)
    picked = []
    for _ in range(count):
        x = int(rng.choice(centers))
        r = float(rng.choice(np.asarray(radii, dtype=float)))
        if np.all(inside[ball(graph, x, r)]):
            picked.append((x, r))
    return picked


def _oscillations(graph: NetGraph, u: np.ndarray, U: np.ndarray, balls: Sequence[Tuple[int, float]]):
    inside = as_mask(graph.n, U)
    out = []
    for x, r in balls:
        B = ball(graph, x, r)
        if B.size and np.all(inside[B]):
            values = u[B]
            out.append(((int(x), float(r)), values - values.mean()))
    if not out:
        raise InputError("Aucune boule échantillonnée n'est incluse dans U")
    return out


def bmo_norm(graph: NetGraph, u: np.ndarray, U: np.ndarray, balls: Sequence[Tuple[int, float]]) -> BmoReport:
    """
    max sur les boules B incluses dans U de la moyenne de |u - u_B|
    (mesure uniforme sur les sommets).

    Raises:
        InputError: Aucune boule admissible
    """
    u = np.asarray(u, dtype=float)
    osc = _oscillations(graph, u, U, balls)
    means = [float(np.mean(np.abs(dev))) for _, dev in osc]
    k = int(np.argmax(means))
    return BmoReport(means[k], [b for b, _ in osc], osc[k][0])


def _jn_rate(deviation: np.ndarray, points: int = 12) -> float:
    a = np.abs(deviation)
    top = float(a.max())
    if top == 0:
        return float('nan')
    ts = np.linspace(0.0, top, points, endpoint=False)
    fractions = np.array([np.mean(a > t) for t in ts])
    keep = fractions > 0
    if keep.sum() < 2:
        return float('nan')
    slope, _ = np.polyfit(ts[keep], np.log(fractions[keep]), 1)
    return float(-slope)


def check_log_bmo(graph: NetGraph, h: np.ndarray, U: np.ndarray, balls: Sequence[Tuple[int, float]],
                  rel_shift: float = 1e-12) -> BmoReport:
    """
    BMO de log(h + delta), delta = rel_shift * max h, avec le taux de
    décroissance de John-Nirenberg mesuré sur la pire boule et le produit
    croisé moyenne(exp(c v)) moyenne(exp(-c v)) pour c = taux / 2.
    """
    h = np.asarray(h, dtype=float)
    if np.any(h < 0):
        raise InputError("h doit être positive")
    shift = rel_shift * float(h.max())
    if not shift > 0:
        raise InputError("h est identiquement nulle")
    v = np.log(h + shift)
    report = bmo_norm(graph, v, U, balls)

    worst = dict(_oscillations(graph, v, U, [report.worst_ball]))[report.worst_ball]
    rate = _jn_rate(worst)
    crossover = float('nan')
    if np.isfinite(rate) and rate > 0:
        c = rate / 2.0
        crossover = max(
            float(np.mean(np.exp(c * dev)) * np.mean(np.exp(-c * dev)))
            for _, dev in _oscillations(graph, v, U, report.balls)
        )
    report.jn_rate, report.crossover = rate, crossover
    logger.info(f"BMO(log h) = {report.norm:.6g}, taux JN {rate:.4g}, produit croisé {crossover:.4g}")
    return report
