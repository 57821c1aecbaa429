"""
Système de câbles: chaque arête [z1, z2] du graphe est remplacée par un
segment de longueur l = d(z1, z2) portant la mesure de longueur H et la
mesure lambda de densité Phi(eps) / l (masse Phi(eps) par câble).

Les fonctions sur les câbles sont les interpolées linéaires des
fonctions de sommets.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.netgraph import NetGraph, as_mask
from src.penergy.energy import check_p
from src.scaling import PowerScaling
from src.utils.exceptions import DomainError, InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('cable', 'cable.log')


@dataclass(frozen=True)
class SeamScaling:
    """
    Fonction d'échelle recollée en eps:
    base(eps) (r / eps)^inner_exponent pour r <= eps, base(r) au-delà.
    """

    base: PowerScaling
    epsilon: float
    inner_exponent: float

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        inner = float(self.base(self.epsilon)) * (r / self.epsilon) ** self.inner_exponent
        out = np.where(r <= self.epsilon, inner, self.base(np.maximum(r, self.epsilon)))
        return float(out) if out.ndim == 0 else out

    def to_dict(self) -> Dict[str, Any]:
        return {'base': self.base.to_dict(), 'epsilon': self.epsilon, 'inner_exponent': self.inner_exponent}


@dataclass(eq=False)
class CableSystem:
    graph: NetGraph
    p: float
    phi_eps: SeamScaling = field(init=False)
    psi_eps: SeamScaling = field(init=False)

    def __post_init__(self):
        self.p = check_p(self.p)
        eps = self.graph.epsilon
        self.phi_eps = SeamScaling(self.graph.phi, eps, 1.0)
        self.psi_eps = SeamScaling(self.graph.psi, eps, self.p)

    @property
    def lengths(self) -> np.ndarray:
        return self.graph.lengths

    @property
    def lambda_density(self) -> np.ndarray:
        return self.graph.vertex_mass / self.graph.lengths

    @property
    def lambda_masses(self) -> np.ndarray:
        return self.lambda_density * self.graph.lengths

    @property
    def total_lambda_mass(self) -> float:
        return float(self.lambda_masses.sum())

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'phi_eps': self.phi_eps.to_dict(),
            'psi_eps': self.psi_eps.to_dict(),
            'cables': [[int(i), int(j), float(l), float(dens)]
                       for (i, j), l, dens in zip(self.graph.edges, self.lengths, self.lambda_density)],
        }


def build_cable_system(graph: NetGraph, p: float) -> CableSystem:
    cs = CableSystem(graph, p)
    logger.debug(f"Système de câbles: {graph.m} câbles, masse lambda totale {cs.total_lambda_mass:.6g}")
    return cs


@dataclass
class CableFn:
    """Fonction affine par câble, déterminée par ses valeurs aux sommets."""

    cs: CableSystem
    values: np.ndarray

    @property
    def gradients(self) -> np.ndarray:
        i, j = self.cs.graph.edges[:, 0], self.cs.graph.edges[:, 1]
        return (self.values[j] - self.values[i]) / self.cs.lengths

    def at(self, edge: int, t: float) -> float:
        """Valeur au point du câble situé à distance t de sa première extrémité."""
        i, j = self.cs.graph.edges[edge]
        length = self.cs.lengths[edge]
        if not 0 <= t <= length:
            raise InputError(f"t={t} hors du câble de longueur {length}")
        return float((t * self.values[j] + (length - t) * self.values[i]) / length)

    def at_vertices(self) -> np.ndarray:
        return self.values.copy()


def interpolate(cs: CableSystem, u: np.ndarray) -> CableFn:
    u = np.asarray(u, dtype=float)
    if u.shape != (cs.graph.n,):
        raise InputError(f"u: taille {u.shape}, attendu ({cs.graph.n},)")
    return CableFn(cs, u.copy())


def _cable_mask(cs: CableSystem, center: Optional[int], r: Optional[float],
                vertices: Optional[Sequence[int]]) -> np.ndarray:
    i, j = cs.graph.edges[:, 0], cs.graph.edges[:, 1]
    if center is not None:
        if r is None or not r > 0:
            raise DomainError("Rayon de boule invalide")
        d = cs.graph.intrinsic_distances(int(center))
        return np.minimum(d[i], d[j]) < r
    if vertices is not None:
        inside = as_mask(cs.graph.n, vertices)
        return inside[i] & inside[j]
    return np.ones(cs.graph.m, dtype=bool)


def cable_energy(cs: CableSystem, f: CableFn, center: Optional[int] = None, r: Optional[float] = None,
                 vertices: Optional[Sequence[int]] = None) -> float:
    """
    p-énergie sur les câbles: (Phi(eps)/Psi(eps)) somme l^(p-1) integrale |grad f|^p dH.

    Restriction à une boule (center, r): un câble compte dès que son
    intérieur rencontre la boule. Restriction à un ensemble de sommets:
    les deux extrémités doivent y appartenir.
    """
    p = cs.p
    length = cs.lengths
    per_cable = length ** (p - 1.0) * length * np.abs(f.gradients) ** p
    mask = _cable_mask(cs, center, r, vertices)
    return cs.graph.conductance_factor * float(per_cable[mask].sum())


def cable_ball_measure(cs: CableSystem, x: int, r: float) -> float:
    """lambda(B(x, r)), les câbles partiellement couverts étant comptés au prorata de la longueur."""
    if not r > 0:
        raise DomainError(f"r doit être > 0 (reçu {r})")
    d = cs.graph.intrinsic_distances(int(x))
    i, j = cs.graph.edges[:, 0], cs.graph.edges[:, 1]
    covered = np.maximum(0.0, r - d[i]) + np.maximum(0.0, r - d[j])
    return float(np.sum(np.minimum(cs.lengths, covered) * cs.lambda_density))


def content_bounds(cs: CableSystem, A: Sequence[int]) -> Tuple[float, float]:
    """Encadrement (diam(A)/2, diam(A)) du 1-contenu de Hausdorff de A."""
    members = np.flatnonzero(as_mask(cs.graph.n, A))
    if members.size == 0:
        raise InputError("Ensemble vide")
    diam = 0.0
    for _, rows in cs.graph.iter_distance_rows(members):
        diam = max(diam, float(rows[:, members].max()))
    return diam / 2.0, diam


@dataclass
class SeamReport:
    tau: float
    C: float
    worst: Tuple[float, float]
    pairs: int
    straddles: bool
    values: List[float] = field(default_factory=list)


def check_rsvr_seam(cs: CableSystem, tau: float, radii: Sequence[float]) -> SeamReport:
    """
    max sur r <= R de (r/R)^tau Phi_eps(R)/Phi_eps(r) * Psi_eps(r)/Psi_eps(R)
    sur une grille de rayons de part et d'autre de eps.
    """
    p = cs.p
    if not 1.0 - p <= tau < 1.0:
        raise DomainError(f"tau doit être dans [1-p, 1) (reçu {tau})")
    radii = sorted(float(r) for r in radii)
    if len(radii) < 2 or radii[0] <= 0:
        raise InputError("Grille de rayons invalide")
    values, worst, best = [], (radii[0], radii[0]), -np.inf
    for a, r in enumerate(radii):
        for R in radii[a:]:
            v = (r / R) ** tau * cs.phi_eps(R) / cs.phi_eps(r) * cs.psi_eps(r) / cs.psi_eps(R)
            values.append(float(v))
            if v > best:
                best, worst = float(v), (r, R)
    eps = cs.graph.epsilon
    straddles = radii[0] <= eps < radii[-1]
    return SeamReport(float(tau), best, worst, len(values), bool(straddles), values)
