"""
Inégalité de Sobolev sur les boules et inégalité de Caccioppoli.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.capacity import build_cutoff
from src.netgraph import NetGraph, as_mask, ball, boundary_ring, estimate_volume_growth
from src.penergy import SolverOptions, energy
from src.scaling import PowerScaling
from src.utils.exceptions import InputError


@dataclass(frozen=True)
class SobolevCheckSpec:
    """
    Exposants de l'inégalité de Sobolev:
    nu = max(beta_* + 1, log2 C_VD), kappa = nu / (nu - beta_*).
    """

    beta_star: float
    doubling_hat: float
    nu: float
    kappa: float

    @classmethod
    def from_constants(cls, beta_star: float, doubling_hat: float) -> 'SobolevCheckSpec':
        nu = max(beta_star + 1.0, math.log2(doubling_hat))
        return cls(float(beta_star), float(doubling_hat), nu, nu / (nu - beta_star))

    @classmethod
    def from_graph(cls, graph: NetGraph, center: int, radii: Sequence[float],
                   beta_star: float) -> 'SobolevCheckSpec':
        """C_VD mesurée par doublement des boules intrinsèques."""
        report = estimate_volume_growth(graph, center, radii)
        return cls.from_constants(beta_star, report.doubling_hat)


def check_sobolev(graph: NetGraph, f: np.ndarray, center: int, R: float, spec: SobolevCheckSpec,
                  psi_hat: PowerScaling, p: float) -> float:
    """
    Rapport (somme m |f|^(p kappa))^(1/kappa) / (Psi(R) / V(x,R)^((kappa-1)/kappa) E(f))
    pour f portée par B(x, R) et son bord.

    Raises:
        InputError: f non nulle hors de la boule, ou énergie nulle pour f non nulle
    """
    f = np.asarray(f, dtype=float)
    B = ball(graph, center, R)
    support = as_mask(graph.n, B) | as_mask(graph.n, boundary_ring(graph, B))
    if np.any(f[~support] != 0):
        raise InputError("f doit être nulle hors de B(x, R) et de son bord")
    kappa = spec.kappa
    lhs = (graph.vertex_mass * float(np.sum(np.abs(f) ** (p * kappa)))) ** (1.0 / kappa)
    E = energy(graph, f, p)
    if E == 0:
        if lhs == 0:
            return 0.0
        raise InputError("Énergie nulle pour une fonction non nulle")
    rhs = float(psi_hat(R)) / graph.mass(B) ** ((kappa - 1.0) / kappa) * E
    return lhs / rhs


def check_caccioppoli(graph: NetGraph, u: np.ndarray, center: int, R: float, r: float, theta: float,
                      psi_hat: PowerScaling, p: float, opts: Optional[SolverOptions] = None) -> float:
    """
    Rapport E(phi (u - theta)_+) Psi(r) / somme_{B(x,R+r)} u^p m, où phi est la
    fonction plateau de B(x, R) dans B(x, R + r).
    """
    u = np.asarray(u, dtype=float)
    cutoff = build_cutoff(graph, center, R, psi_hat, p, R_out=R + r, opts=opts)
    numerator = energy(graph, cutoff.phi * np.maximum(u - theta, 0.0), p) * float(psi_hat(r))
    denom = graph.vertex_mass * float(np.sum(np.abs(u[ball(graph, center, R + r)]) ** p))
    if denom == 0:
        return 0.0
    return numerator / denom
