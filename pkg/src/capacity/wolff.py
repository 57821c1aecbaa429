"""
Potentiel de Wolff dyadique et vérifications associées.

    W(x, R) = somme_{n=0}^{n_max} ( mu(B(x, 2^-n R)) / cap(B(x, 2^-n-1 R), X \\ B(x, 2^-n R)) )^(1/(p-1))

tronqué à n_max = floor(log2(R / epsilon)).
"""

import math
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.capacity.condenser import CondenserSpec, capacity
from src.netgraph import NetGraph, ball, outside_ball
from src.penergy import SolverOptions, p_laplacian, riesz_measure, solve_poisson
from src.utils.exceptions import InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('wolff', 'capacity.log')


@dataclass
class WolffTerm:
    n: int
    mu_ball: float
    cap_annulus: float
    term: float


@dataclass
class WolffResult:
    center: int
    R: float
    terms: List[WolffTerm]
    total: float
    n_max: int
    infinite: bool = False


class AnnulusCapacities:
    """Cache des capacités cap(B(x, r/2), X \\ B(x, r)) partagé entre évaluations."""

    def __init__(self, graph: NetGraph, p: float, opts: Optional[SolverOptions] = None):
        self.graph = graph
        self.p = p
        self.opts = opts
        self._cache: Dict[Tuple[int, float, float], float] = {}
        self._lock = threading.Lock()

    def get(self, center: int, r_in: float, r_out: float) -> float:
        key = (int(center), float(r_in), float(r_out))
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        grounded = outside_ball(self.graph, center, r_out)
        if grounded.size == 0:
            value = 0.0
        else:
            spec = CondenserSpec(ball(self.graph, center, r_in), grounded)
            value = capacity(self.graph, spec, self.p, self.opts).value
        with self._lock:
            self._cache[key] = value
        return value


def dyadic_depth(R: float, epsilon: float) -> int:
    return int(math.floor(math.log2(R / epsilon) + 1e-12))


def wolff_potential(graph: NetGraph, mu: np.ndarray, x: int, R: float, p: float,
                    opts: Optional[SolverOptions] = None, n_max: Optional[int] = None,
                    caps: Optional[AnnulusCapacities] = None) -> WolffResult:
    """
    Potentiel de Wolff de la mesure mu au point x et à l'échelle R.

    Args:
        mu (np.ndarray): Mesure de sommets (>= 0)
        n_max (int, optional): Profondeur imposée (défaut floor(log2(R/epsilon)))
        caps (AnnulusCapacities, optional): Cache de capacités à réutiliser

    Raises:
        InputError: R <= epsilon ou mesure négative
    """
    if not R > graph.epsilon:
        raise InputError(f"R doit être > epsilon (R={R}, epsilon={graph.epsilon})")
    mu = np.asarray(mu, dtype=float)
    if np.any(mu < 0):
        raise InputError("La mesure doit être positive")
    caps = caps or AnnulusCapacities(graph, p, opts)
    depth = dyadic_depth(R, graph.epsilon) if n_max is None else int(n_max)

    terms, infinite = [], False
    for n in range(depth + 1):
        r_n = R * 2.0 ** (-n)
        mass = float(mu[ball(graph, x, r_n)].sum())
        cap = caps.get(x, r_n / 2.0, r_n)
        if cap > 0:
            term = (mass / cap) ** (1.0 / (p - 1.0))
        elif mass > 0:
            term, infinite = float('inf'), True
        else:
            term = 0.0
        terms.append(WolffTerm(n, mass, cap, term))
    total = float(sum(t.term for t in terms))
    return WolffResult(int(x), float(R), terms, total, depth, infinite)


@dataclass
class WolffBoundsReport:
    u_x0: float
    wolff_R: float
    wolff_2R: float
    min_ball: float
    lower_ratio: float
    upper_ratio: float
    degenerate: bool
    flags: List[str] = field(default_factory=list)


def _ratio(num: float, den: float) -> Tuple[float, bool]:
    if den > 0:
        return num / den, False
    return (float('nan') if num == 0 else float('inf')), True


def verify_wolff_bounds(graph: NetGraph, U: np.ndarray, x0: int, R: float, f, p: float,
                        opts: Optional[SolverOptions] = None,
                        caps: Optional[AnnulusCapacities] = None) -> WolffBoundsReport:
    """
    Résout -Delta_p u = m f dans U (u = 0 au bord), prend mu = mu[u] et compare
    u(x0) au potentiel de Wolff des deux côtés:

        lower_ratio = u(x0) / W(x0, R)
        upper_ratio = u(x0) / (min_{B(x0,R)} u + W(x0, 2R))
    """
    caps = caps or AnnulusCapacities(graph, p, opts)
    u = solve_poisson(graph, U, f, p, opts=opts).u
    mu = np.maximum(riesz_measure(graph, u, p, U, tol=None), 0.0)
    w_R = wolff_potential(graph, mu, x0, R, p, opts, caps=caps)
    w_2R = wolff_potential(graph, mu, x0, 2.0 * R, p, opts, caps=caps)
    u_x0 = float(u[x0])
    min_ball = float(u[ball(graph, x0, R)].min())

    lower, lower_deg = _ratio(u_x0, w_R.total)
    upper, upper_deg = _ratio(u_x0, min_ball + w_2R.total)
    flags = []
    if lower_deg:
        flags.append('wolff_zero' if u_x0 > 0 else 'zero_over_zero')
    if w_R.infinite or w_2R.infinite:
        flags.append('infinite_term')
    logger.info(f"Bornes de Wolff en x0={x0}, R={R}: inf {lower:.4g}, sup {upper:.4g}")
    return WolffBoundsReport(u_x0, w_R.total, w_2R.total, min_ball, lower, upper,
                             lower_deg or upper_deg, flags)


@dataclass
class WolffInfReport:
    inf_half: float
    mu_ball: float
    cap: float
    bracket: float
    ratio: float
    ok: bool


def check_wolff_inf_bound(graph: NetGraph, u: np.ndarray, x0: int, R: float, p: float,
                          opts: Optional[SolverOptions] = None,
                          caps: Optional[AnnulusCapacities] = None) -> WolffInfReport:
    """
    Minoration inf_{B/2} u >= (1/C) (mu[u](9/10 B) / cap(19/20 B, X \\ B))^(1/(p-1))
    pour u >= 0 surharmonique sur 2B; retourne le rapport des deux membres.
    """
    caps = caps or AnnulusCapacities(graph, p, opts)
    u = np.asarray(u, dtype=float)
    mu = np.maximum(-p_laplacian(graph, u, p), 0.0)
    mass = float(mu[ball(graph, x0, 0.9 * R)].sum())
    cap = caps.get(x0, 0.95 * R, R)
    inf_half = float(u[ball(graph, x0, R / 2.0)].min())
    bracket = (mass / cap) ** (1.0 / (p - 1.0)) if cap > 0 else float('inf')
    ratio = inf_half / bracket if bracket > 0 else float('inf')
    ok = bool(np.isfinite(ratio) and ratio > 0)
    return WolffInfReport(inf_half, mass, cap, float(bracket), float(ratio), ok)
