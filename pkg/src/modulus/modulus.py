"""
p-module combinatoire de la famille des chemins reliant deux plaques.

    mod(Theta) = inf { somme rho(v)^p : rho >= 0, L_rho(theta) >= 1 pour tout theta }

Résolution par plans sécants: on maintient une famille active de chemins,
on résout le programme restreint par montée duale coordonnée par
coordonnée, puis on ajoute le rho-plus-court chemin tant qu'il est trop court.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import networkx as nx
import numpy as np
from scipy.optimize import brentq, minimize

from src.capacity import CondenserSpec, capacity
from src.modulus.paths import path_length, rho_shortest_path
from src.netgraph import NetGraph
from src.penergy import SolverOptions
from src.utils.exceptions import ConvergenceError, DomainError, ResourceError
from src.utils.logger_config import setup_logger

logger = setup_logger('modulus', 'modulus.log')

BRUTE_MAX_VERTICES = 12
BRUTE_MAX_PATHS = 10 ** 5


@dataclass
class ModulusOptions:
    """
    Attributes:
        tol (float): Défaut d'admissibilité toléré sur le plus court chemin
        inner_tol (float): Incrément dual relatif qui arrête la montée duale
        max_outer (int): Nombre maximal de chemins ajoutés
        max_sweeps (int): Balayages duaux par itération externe
    """

    tol: float = 1e-6
    inner_tol: float = 1e-8
    max_outer: int = 2000
    max_sweeps: int = 20000

    @classmethod
    def from_config(cls, section: Optional[Dict[str, Any]]) -> 'ModulusOptions':
        section = section or {}
        return cls(**{k: section[k] for k in cls.__dataclass_fields__ if k in section})


@dataclass
class ModulusResult:
    value: float
    rho_star: np.ndarray
    active_paths: List[List[int]]
    admissibility_slack: float
    duality_gap_estimate: float
    lower_bound: float
    iterations: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'value': self.value,
            'lower_bound': self.lower_bound,
            'duality_gap_estimate': self.duality_gap_estimate,
            'admissibility_slack': self.admissibility_slack,
            'iterations': self.iterations,
            'rho_star': self.rho_star.tolist(),
            'active_paths': [list(map(int, path)) for path in self.active_paths],
        }


class _DualState:
    """Multiplicateurs lambda_theta et charges s_z = somme des lambda des chemins passant par z."""

    def __init__(self, n: int, p: float, unit: float):
        self.p = p
        self.unit = unit
        self.q = 1.0 / (p - 1.0)
        self.paths: List[np.ndarray] = []
        self.lam: List[float] = []
        self.s = np.zeros(n)

    def add(self, path: List[int]) -> None:
        self.paths.append(np.asarray(path, dtype=np.int64))
        self.lam.append(0.0)

    def rho(self) -> np.ndarray:
        return (np.maximum(self.s, 0.0) / self.p) ** self.q

    def dual_value(self) -> float:
        return self.unit * float(sum(self.lam)) - (self.p - 1.0) * float(
            np.sum((np.maximum(self.s, 0.0) / self.p) ** (self.p * self.q)))

    def _update(self, k: int) -> float:
        path = self.paths[k]
        base = np.maximum(self.s[path] - self.lam[k], 0.0)

        def deficit(t):
            return float(np.sum(((base + t) / self.p) ** self.q)) - self.unit

        if deficit(0.0) >= 0:
            t = 0.0
        else:
            hi = self.p * (self.unit / path.size) ** (self.p - 1.0)
            t = brentq(deficit, 0.0, hi, xtol=1e-15 * hi)
        delta = t - self.lam[k]
        self.s[path] = base + t
        self.lam[k] = t
        return abs(delta)

    def ascend(self, inner_tol: float, max_sweeps: int) -> int:
        for sweep in range(1, max_sweeps + 1):
            moved = max(self._update(k) for k in range(len(self.paths)))
            if moved <= inner_tol * max(max(self.lam), np.finfo(float).tiny):
                return sweep
        logger.debug(f"Montée duale arrêtée après {max_sweeps} balayages")
        return max_sweeps


def p_modulus(graph: NetGraph, spec: CondenserSpec, p: float, opts: Optional[ModulusOptions] = None,
              unit: float = 1.0) -> ModulusResult:
    """
    p-module de Path(A0, A1; A2) par plans sécants.

    La valeur retournée est sum rho*^p pour rho* = rho * unit / L_min, densité
    admissible (borne supérieure); la valeur duale donne la borne inférieure.

    Raises:
        ConvergenceError: Nombre maximal d'itérations atteint (details: lower, upper)
    """
    if not p > 1:
        raise DomainError(f"p doit être > 1 (reçu {p})")
    opts = opts or ModulusOptions()
    a0, a1, a2 = spec.masks(graph.n)
    state = _DualState(graph.n, p, unit)
    seen = set()
    rho = np.zeros(graph.n)
    outer = 0

    while True:
        found = rho_shortest_path(graph, rho, a0, a1, a2)
        if found is None:
            logger.info("Aucun chemin entre les plaques: module nul")
            return ModulusResult(0.0, np.zeros(graph.n), [], float('inf'), 0.0, 0.0, outer)
        path, L = found
        if L >= unit * (1.0 - opts.tol):
            break
        outer += 1
        if outer > opts.max_outer:
            upper = float(np.sum((rho * unit / L) ** p)) if L > 0 else float('inf')
            raise ConvergenceError(
                f"p-module: {opts.max_outer} itérations sans admissibilité",
                residual=unit - L, iterations=outer,
                details={'lower': state.dual_value(), 'upper': upper},
            )
        if tuple(path) not in seen:
            seen.add(tuple(path))
            state.add(path)
        state.ascend(opts.inner_tol, opts.max_sweeps)
        rho = state.rho()

    rho_star = rho * unit / L
    value = float(np.sum(rho_star ** p))
    lower = state.dual_value()
    slack = min((path_length(rho_star, pa) - unit for pa in state.paths), default=float('inf'))
    logger.info(f"p-module {value:.10g} (borne duale {lower:.10g}, {len(state.paths)} chemins actifs)")
    return ModulusResult(
        value=value,
        rho_star=rho_star,
        active_paths=[pa.tolist() for pa in state.paths],
        admissibility_slack=float(slack),
        duality_gap_estimate=max(value - lower, 0.0),
        lower_bound=lower,
        iterations=outer,
    )


def enumerate_plate_paths(graph: NetGraph, spec: CondenserSpec, max_paths: int = BRUTE_MAX_PATHS) -> List[List[int]]:
    """
    Chemins simples de A0 vers A1 dans A2 dont l'intérieur évite les deux
    plaques. Tout autre chemin en contient un comme sous-chemin.
    """
    a0, a1, a2 = spec.masks(graph.n)
    G = nx.Graph()
    G.add_nodes_from(np.flatnonzero(a2).tolist())
    G.add_edges_from((int(i), int(j)) for i, j in graph.edges if a2[i] and a2[j])
    targets = np.flatnonzero(a1).tolist()

    paths = []
    for s in np.flatnonzero(a0).tolist():
        H = G.subgraph([v for v in G.nodes if v == s or not a0[v]])
        for path in nx.all_simple_paths(H, s, targets):
            if any(a1[v] for v in path[1:-1]):
                continue
            paths.append(path)
            if len(paths) > max_paths:
                raise ResourceError(f"Plus de {max_paths} chemins: énumération refusée")
    return paths


def brute_modulus(graph: NetGraph, spec: CondenserSpec, p: float, unit: float = 1.0,
                  tol: float = 1e-8) -> float:
    """
    p-module par énumération exhaustive des chemins et programme convexe
    complet (SLSQP). Réservé aux graphes d'au plus 12 sommets.

    Raises:
        ResourceError: Graphe trop grand ou trop de chemins
    """
    if graph.n > BRUTE_MAX_VERTICES:
        raise ResourceError(f"Graphe trop grand pour l'oracle ({graph.n} > {BRUTE_MAX_VERTICES} sommets)")
    paths = enumerate_plate_paths(graph, spec)
    if not paths:
        return 0.0
    incidence = np.zeros((len(paths), graph.n))
    for k, path in enumerate(paths):
        incidence[k, path] = 1.0
    used = np.flatnonzero(incidence.any(axis=0))
    M = incidence[:, used]
    x0 = np.full(used.size, unit / min(len(path) for path in paths))

    res = minimize(
        lambda x: float(np.sum(np.abs(x) ** p)),
        x0,
        jac=lambda x: p * np.abs(x) ** (p - 1.0) * np.sign(x),
        method='SLSQP',
        bounds=[(0.0, None)] * used.size,
        constraints=[{'type': 'ineq', 'fun': lambda x: M @ x - unit, 'jac': lambda x: M}],
        options={'ftol': tol * 1e-4, 'maxiter': 1000},
    )
    if not res.success:
        logger.warning(f"Oracle SLSQP: {res.message}")
    x = np.maximum(res.x, 0.0)
    shortest = float((M @ x).min())
    if shortest < unit:
        x = x * unit / shortest
    return float(np.sum(x ** p))


@dataclass
class ComparabilityReport:
    cap: float
    mod: float
    ratio: float
    C: float
    within: bool
    degenerate: bool
    notes: List[str] = field(default_factory=list)


def check_mod_cap_comparability(graph: NetGraph, spec: CondenserSpec, p: float, C: Optional[float] = None,
                                opts: Optional[SolverOptions] = None,
                                mod_opts: Optional[ModulusOptions] = None) -> ComparabilityReport:
    """
    Rapport (Psi(eps)/Phi(eps)) cap / mod et appartenance à [1/C, C],
    avec C = (N+1)^p par défaut (N = degré maximal).
    """
    if C is None:
        C = float(int(graph.degrees.max(initial=0)) + 1) ** p
    cap = capacity(graph, spec, p, opts).value
    mod = p_modulus(graph, spec, p, mod_opts).value
    if cap == 0 and mod == 0:
        return ComparabilityReport(cap, mod, float('nan'), C, False, True, ['cap = mod = 0'])
    if mod == 0:
        return ComparabilityReport(cap, mod, float('inf'), C, False, True, ['mod = 0'])
    ratio = cap / (graph.conductance_factor * mod)
    within = 1.0 / C <= ratio <= C
    logger.info(f"Comparabilité module/capacité: rapport {ratio:.6g} (C={C:.4g})")
    return ComparabilityReport(cap, mod, ratio, C, bool(within), False)
