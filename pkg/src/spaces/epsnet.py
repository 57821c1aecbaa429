"""
Extraction gloutonne d'epsilon-réseaux avec un index par grille.
"""

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Optional

import numpy as np

from src.spaces.generators import PointCloud
from src.utils.exceptions import DomainError, InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('epsnet', 'spaces.log')

# Tolérance relative sur la séparation: les centres de cellules sont
# exactement à distance epsilon en arithmétique exacte
SEPARATION_RTOL = 1e-9


@dataclass(frozen=True)
class NetSpec:
    """
    Paramètres d'extraction.

    Attributes:
        epsilon (float): Rayon de séparation (> 0)
        seed (int, optional): Graine de l'ordre de parcours; None = ordre des indices
    """

    epsilon: float
    seed: Optional[int] = 0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise DomainError(f"epsilon doit être > 0 (reçu {self.epsilon})")


def scan_order(n: int, seed: Optional[int]) -> np.ndarray:
    """Ordre de parcours déterministe pour une graine donnée."""
    if seed is None:
        return np.arange(n)
    return np.random.default_rng(seed).permutation(n)


def extract_epsnet(cloud: PointCloud, spec: NetSpec) -> np.ndarray:
    """
    Sous-ensemble maximal epsilon-séparé, construit glouton dans l'ordre de parcours.

    Un point est accepté si sa distance à tous les points déjà retenus est
    >= epsilon (à SEPARATION_RTOL près). La maximalité donne un rayon de
    recouvrement < epsilon sur le nuage.

    Args:
        cloud (PointCloud): Nuage de points
        spec (NetSpec): Paramètres d'extraction

    Returns:
        np.ndarray: Indices (triés) des points du réseau
    """
    n = len(cloud)
    if n == 0:
        raise InputError("Nuage de points vide")

    eps = spec.epsilon
    threshold = eps * (1.0 - SEPARATION_RTOL)
    points = cloud.points
    dim = cloud.dim
    neighbours = list(product((-1, 0, 1), repeat=dim))

    grid = defaultdict(list)
    accepted = []
    for idx in scan_order(n, spec.seed):
        x = points[idx]
        cell = tuple(np.floor(x / eps).astype(np.int64))
        too_close = False
        for offset in neighbours:
            key = tuple(c + o for c, o in zip(cell, offset))
            for j in grid.get(key, ()):
                if np.linalg.norm(points[j] - x) < threshold:
                    too_close = True
                    break
            if too_close:
                break
        if not too_close:
            grid[cell].append(idx)
            accepted.append(idx)

    net = np.sort(np.asarray(accepted, dtype=np.int64))
    logger.info(f"epsilon-réseau extrait: {net.size}/{n} points (epsilon={eps:.6g})")
    return net
