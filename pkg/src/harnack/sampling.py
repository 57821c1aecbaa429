"""
Tirages de données de bord positives pour les essais de Harnack.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from src.netgraph import NetGraph
from src.utils.exceptions import InputError

SAMPLER_KINDS = ('bump', 'field', 'affine')


class BoundarySampler:
    """
    Données de bord positives sur un anneau de sommets:

    - 'bump': indicatrice d'un seul sommet de l'anneau
    - 'field': exponentielle d'un champ de Fourier aléatoire
    - 'affine': fonction affine aléatoire tronquée à 0
    """

    def __init__(self, graph: NetGraph, ring: np.ndarray, kinds: Sequence[str] = SAMPLER_KINDS, modes: int = 6):
        unknown = set(kinds) - set(SAMPLER_KINDS)
        if unknown:
            raise InputError(f"Types de tirage inconnus: {sorted(unknown)}")
        ring = np.asarray(ring, dtype=np.int64)
        if ring.size == 0:
            raise InputError("Anneau de bord vide")
        self.graph = graph
        self.ring = ring
        self.kinds = tuple(kinds)
        self.modes = modes
        pts = graph.coords[ring]
        self._center = pts.mean(axis=0)
        self._diam = max(float(np.ptp(pts, axis=0).max()), graph.epsilon)

    def _bump(self, rng: np.random.Generator) -> np.ndarray:
        values = np.zeros(self.ring.size)
        values[rng.integers(self.ring.size)] = 1.0
        return values

    def _field(self, rng: np.random.Generator) -> np.ndarray:
        pts = self.graph.coords[self.ring]
        freqs = rng.normal(0.0, 2.0 * np.pi / self._diam, size=(self.modes, pts.shape[1]))
        phases = rng.uniform(0.0, 2.0 * np.pi, self.modes)
        amps = rng.normal(0.0, 1.0, self.modes)
        field = np.cos(pts @ freqs.T + phases) @ amps / np.sqrt(self.modes)
        return np.exp(field)

    def _affine(self, rng: np.random.Generator) -> np.ndarray:
        pts = self.graph.coords[self.ring] - self._center
        direction = rng.normal(size=pts.shape[1])
        direction /= np.linalg.norm(direction)
        values = rng.uniform(-0.5, 1.0) + pts @ direction / self._diam
        if values.max() <= 0:
            values = -values
        return np.maximum(values, 0.0)

    def sample(self, rng: np.random.Generator, kind: Optional[str] = None) -> Tuple[str, np.ndarray]:
        """
        Returns:
            (type de tirage, fonction de sommets nulle hors de l'anneau)
        """
        kind = kind or self.kinds[int(rng.integers(len(self.kinds)))]
        values = {'bump': self._bump, 'field': self._field, 'affine': self._affine}[kind](rng)
        g = np.zeros(self.graph.n)
        g[self.ring] = values
        return kind, g


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(trial)])
