"""
Construction de fonctions plateau (cutoff) à partir d'un problème de
Poisson perturbé sur un anneau, et mesure des constantes de l'inégalité
de Sobolev avec cutoff.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from src.netgraph import NetGraph, as_mask, boundary_ring
from src.penergy import SolverOptions, energy, solve_poisson
from src.scaling import PowerScaling
from src.utils.exceptions import GeometryError, InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('cutoff', 'capacity.log')


@dataclass
class CutoffResult:
    phi: np.ndarray
    center: int
    R: float
    R_out: float
    c3: float
    lam: float
    energy: float
    measured_c1: Optional[float] = None
    measured_c2: Optional[float] = None

    @property
    def A(self) -> float:
        return self.R_out / self.R

    def to_dict(self) -> Dict[str, Any]:
        return {
            'center': self.center,
            'R': self.R,
            'R_out': self.R_out,
            'A': self.A,
            'c3': self.c3,
            'lambda': self.lam,
            'energy': self.energy,
            'measured_c1': self.measured_c1,
            'measured_c2': self.measured_c2,
            'phi': self.phi.tolist(),
        }


def build_cutoff(graph: NetGraph, x0: int, R: float, psi_hat: PowerScaling, p: float,
                 R_out: Optional[float] = None, opts: Optional[SolverOptions] = None) -> CutoffResult:
    """
    Fonction plateau pour B(x0, R) dans B(x0, R_out) (R_out = 2R par défaut).

    On résout -Delta_p u + lambda m |u|^(p-2) u = m sur l'anneau R < d < R_out
    avec lambda = 1/Psi(w), w = R_out - R. On normalise par c3, minimum de
    u / Psi(w)^(1/(p-1)) sur l'anneau médian R + w/4 <= d < R + w/2, puis
    phi = 1 sur d < R + w/2 et min(v, 1) ailleurs.

    Raises:
        GeometryError: Anneau ou anneau médian vide, ou c3 nul
    """
    R_out = 2.0 * R if R_out is None else float(R_out)
    if not R_out > R > 0:
        raise GeometryError(f"Rayons invalides: R={R}, R_out={R_out}")
    width = R_out - R
    d = graph.intrinsic_distances(int(x0))
    omega = (d > R) & (d < R_out)
    if not omega.any():
        raise GeometryError("Anneau vide pour la fonction plateau")
    mid = (d >= R + width / 4.0) & (d < R + width / 2.0)
    if not mid.any():
        raise GeometryError("Anneau médian vide pour la fonction plateau")

    psi_w = float(psi_hat(width))
    lam = 1.0 / psi_w
    u = solve_poisson(graph, np.flatnonzero(omega), 1.0, p, lam=lam, opts=opts).u
    scale = psi_w ** (1.0 / (p - 1.0))
    c3 = float(u[mid].min()) / scale
    if not c3 > 0:
        raise GeometryError("Normalisation c3 nulle sur l'anneau médian")

    v = u / (c3 * scale)
    phi = np.where(d < R + width / 2.0, 1.0, np.minimum(v, 1.0))
    phi[d >= R_out] = 0.0
    phi = np.clip(phi, 0.0, 1.0)
    value = energy(graph, phi, p)
    logger.info(f"Fonction plateau x0={x0}, R={R}, R_out={R_out}: c3={c3:.4g}, énergie={value:.6g}")
    return CutoffResult(phi, int(x0), float(R), R_out, c3, lam, value)


def energy_measure(graph: NetGraph, phi: np.ndarray, p: float) -> np.ndarray:
    """Mesure d'énergie de phi: chaque arête donne la moitié de c|dphi|^p à chaque extrémité."""
    i, j = graph.edges[:, 0], graph.edges[:, 1]
    share = 0.5 * graph.conductance_factor * np.abs(phi[i] - phi[j]) ** p
    out = np.zeros(graph.n)
    np.add.at(out, i, share)
    np.add.at(out, j, share)
    return out


@dataclass
class CutoffSobolevFit:
    c1: float
    c2: float
    lhs: List[float] = field(default_factory=list)
    gradient_terms: List[float] = field(default_factory=list)
    mass_terms: List[float] = field(default_factory=list)
    slacks: List[float] = field(default_factory=list)


def check_cutoff_sobolev(graph: NetGraph, cutoff: CutoffResult, probes: Sequence[np.ndarray],
                         psi_hat_R: float, p: float) -> CutoffSobolevFit:
    """
    Plus petit couple (c1, c2) (minimisant c1 + c2) tel que, pour chaque sonde f,

        somme |f|^p dGamma(phi) <= c1 E(f) + c2 / Psi(R) somme m |f|^p

    les énergies et masses étant prises sur B(x0, R_out) et son bord.
    """
    if not probes:
        raise InputError("Aucune sonde fournie")
    d = graph.intrinsic_distances(cutoff.center)
    region = as_mask(graph.n, np.flatnonzero(d < cutoff.R_out))
    region |= as_mask(graph.n, boundary_ring(graph, region))
    gamma = energy_measure(graph, cutoff.phi, p)

    lhs, grad_terms, mass_terms = [], [], []
    for f in probes:
        f = np.asarray(f, dtype=float)
        lhs.append(float(np.sum(np.abs(f) ** p * gamma)))
        grad_terms.append(energy(graph, f, p, A=region))
        mass_terms.append(graph.vertex_mass * float(np.sum(np.abs(f[region]) ** p)) / psi_hat_R)

    a = np.asarray(grad_terms)
    b = np.asarray(mass_terms)
    res = linprog(c=[1.0, 1.0], A_ub=-np.column_stack([a, b]), b_ub=-np.asarray(lhs),
                  bounds=[(0, None), (0, None)], method='highs')
    if not res.success:
        raise InputError(f"Ajustement (c1, c2) impossible: {res.message}")
    c1, c2 = (float(v) for v in res.x)
    slacks = (c1 * a + c2 * b - np.asarray(lhs)).tolist()
    cutoff.measured_c1, cutoff.measured_c2 = c1, c2
    return CutoffSobolevFit(c1, c2, lhs, grad_terms, mass_terms, slacks)
