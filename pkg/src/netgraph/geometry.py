"""
Contrôles géométriques sur le graphe: degré borné, recouvrement 5B,
connexité locale linéaire (LLC) et croissance du volume des boules.
"""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from src.netgraph.graph import NetGraph
from src.netgraph.metrics import annulus, ball, distances, induced_components
from src.scaling import loglog_fit
from src.utils.exceptions import DomainError, InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('geometry', 'netgraph.log')


def check_bounded_degree(graph: NetGraph) -> int:
    """Degré maximal des sommets (0 pour un graphe sans arête)."""
    return int(graph.degrees.max(initial=0))


def greedy_5b_cover(graph: NetGraph, balls: Sequence[Tuple[int, float]],
                    metric_kind: str = 'intrinsic') -> List[int]:
    """
    Sélection de Vitali: parcourt les boules par rayon décroissant et garde
    celles disjointes des boules déjà retenues.

    Deux boules sont disjointes si la distance entre centres est >= r_i + r_j.
    Les dilatées 5x des boules retenues recouvrent alors toute la famille.

    Args:
        graph (NetGraph): Graphe
        balls: Couples (centre, rayon)
        metric_kind (str): 'intrinsic' ou 'euclidean'

    Returns:
        List[int]: Indices des boules retenues, dans l'ordre de sélection
    """
    for _, r in balls:
        if not r > 0:
            raise DomainError(f"Rayon de boule invalide: {r}")
    order = sorted(range(len(balls)), key=lambda k: (-balls[k][1], k))
    selected: List[int] = []
    for k in order:
        center, radius = balls[k]
        d = distances(graph, center, metric_kind)
        if all(d[balls[s][0]] >= radius + balls[s][1] for s in selected):
            selected.append(k)
    return selected


@dataclass
class LLCResult:
    holds: bool
    vacuous: bool
    center: int
    r: float
    A: float
    annulus_size: int
    components: int

    def __bool__(self) -> bool:
        return self.holds


def check_llc(graph: NetGraph, center: int, r: float, A: float,
              metric_kind: str = 'intrinsic') -> LLCResult:
    """
    Vérifie que les sommets de l'anneau (r/2, r) sont reliés par des chemins
    restant dans l'anneau (r/(2A), A r).

    Returns:
        LLCResult: holds / vacuous et nombre de composantes rencontrées
    """
    if not A > 1:
        raise DomainError(f"A doit être > 1 (reçu {A})")
    inner = annulus(graph, center, r / 2.0, r, metric_kind)
    if inner.size == 0:
        return LLCResult(True, True, center, r, A, 0, 0)
    outer = annulus(graph, center, r / (2.0 * A), A * r, metric_kind)
    labels = induced_components(graph, outer)
    touched = np.unique(labels[inner])
    return LLCResult(bool(touched.size == 1), False, center, r, A, int(inner.size), int(touched.size))


@dataclass
class VolumeReport:
    center: int
    radii: List[float]
    masses: List[float]
    d_h_hat: float
    r_squared: float
    doubling_hat: float
    band: Tuple[float, float]
    ratios: List[float] = field(default_factory=list)


def estimate_volume_growth(graph: NetGraph, center: int, radii: Sequence[float],
                           metric_kind: str = 'intrinsic') -> VolumeReport:
    """
    Masses des boules m(B(x, r)), pente log-log, constante de doublement
    mesurée et bande de m(B)/Phi(r).
    """
    radii = sorted(float(r) for r in radii)
    if len(radii) < 2:
        raise InputError("Il faut au moins deux rayons")
    masses = [graph.mass(ball(graph, center, r, metric_kind)) for r in radii]
    doubled = [graph.mass(ball(graph, center, 2.0 * r, metric_kind)) for r in radii]
    fit = loglog_fit(list(zip(radii, masses)))
    ratios = [mass / graph.phi(r) for r, mass in zip(radii, masses)]
    doubling = max(d / m for d, m in zip(doubled, masses))
    logger.info(f"Croissance du volume: d_h estimé {fit.slope:.4f}, doublement {doubling:.3f}")
    return VolumeReport(
        center=int(center),
        radii=radii,
        masses=masses,
        d_h_hat=fit.slope,
        r_squared=fit.r_squared,
        doubling_hat=float(doubling),
        band=(float(min(ratios)), float(max(ratios))),
        ratios=ratios,
    )


def ball_fits(graph: NetGraph, center: int, radius: float, policy: str = 'complement') -> bool:
    """
    Indique si B(center, radius) tient dans le nuage.

    'complement': le complémentaire de la boule est non vide.
    'box': la boule euclidienne tient dans la boîte englobante des sommets.
    """
    if policy == 'complement':
        return bool(np.any(distances(graph, center, 'intrinsic') >= radius))
    if policy == 'box':
        x = graph.coords[int(center)]
        lo, hi = graph.coords.min(axis=0), graph.coords.max(axis=0)
        return bool(np.all(x - radius >= lo - 1e-12) and np.all(x + radius <= hi + 1e-12))
    raise InputError(f"Politique de bord inconnue: {policy}")
