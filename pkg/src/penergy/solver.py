"""
Solveurs variationnels pour les problèmes de Dirichlet, de Poisson et
de Poisson perturbé (lambda > 0) associés au p-laplacien discret.

Le minimiseur de

    J(u) = (1/p) E(u) + (lambda/p) sum_U m |u|^p - sum_U m f u

avec u fixé sur le bord est calculé par moindres carrés itérativement
repondérés (pas de Newton avec recherche linéaire sur J), ou par une
descente de gradient préconditionnée pour p < 1.2 ou p > 6.
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict, Iterable, Optional, Union

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph
import scipy.sparse.linalg as splinalg

from src.netgraph import NetGraph, as_mask, boundary_ring
from src.penergy.energy import check_p, signed_power
from src.utils.exceptions import ConvergenceError, DomainError, IllPosedError, InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('solver', 'solver.log')

METHODS = ('irls', 'gradient')

# Domaine où la repondération reste bien conditionnée
IRLS_P_RANGE = (1.2, 6.0)

ARMIJO = 1e-4


@dataclass
class SolverOptions:
    """
    Options du solveur.

    Attributes:
        method (str): 'irls' ou 'gradient'
        reg_floor (float): Régularisation mu des poids (|du|^2 + mu s^2)^((p-2)/2)
        max_iters (int): Nombre maximal d'itérations
        tol (float): Décroissance relative minimale de l'objectif
        kkt_tol (float): Résidu KKT normalisé visé
        accept_tol (float): Résidu accepté quand l'objectif stagne
        inner_tol (float): Tolérance du gradient conjugué (grands systèmes)
        direct_limit (int): Taille au-delà de laquelle on passe au gradient conjugué
    """

    method: str = 'irls'
    reg_floor: float = 1e-12
    max_iters: int = 10000
    tol: float = 1e-10
    kkt_tol: float = 1e-11
    accept_tol: float = 1e-6
    inner_tol: float = 1e-12
    direct_limit: int = 200000

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"Méthode de résolution inconnue: {self.method}")
        if not (self.reg_floor > 0 and self.tol > 0 and self.kkt_tol > 0 and self.inner_tol > 0):
            raise DomainError("Les tolérances du solveur doivent être > 0")
        if self.max_iters < 1:
            raise DomainError("max_iters doit être >= 1")

    @classmethod
    def from_config(cls, section: Optional[Dict[str, Any]]) -> 'SolverOptions':
        section = section or {}
        known = {k: section[k] for k in cls.__dataclass_fields__ if k in section}
        return cls(**known)


@dataclass
class Solution:
    u: np.ndarray
    iterations: int
    final_energy: float
    kkt_residual: float
    objective: float = 0.0
    method: str = 'irls'

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['u'] = self.u.tolist()
        return data


@dataclass
class DirichletProblem:
    """
    Problème -Delta_p u + lambda m |u|^(p-2) u = m f sur U, u = g sur le bord.

    Le bord est l'anneau d'une arête autour de U; g est lue sur cet anneau.
    """

    graph: NetGraph
    U: np.ndarray
    g: np.ndarray
    p: float
    lam: float = 0.0
    f: Optional[np.ndarray] = None

    def __post_init__(self):
        self.p = check_p(self.p)
        self.U = np.flatnonzero(as_mask(self.graph.n, self.U))
        self.g = _as_vertex_fn(self.graph, self.g, 'g')
        self.f = _as_vertex_fn(self.graph, 0.0 if self.f is None else self.f, 'f')
        if not self.lam >= 0:
            raise DomainError(f"lambda doit être >= 0 (reçu {self.lam})")
        self.ring = boundary_ring(self.graph, self.U)
        if not np.all(np.isfinite(self.g[self.ring])):
            raise InputError("Données de bord non finies")


def _as_vertex_fn(graph: NetGraph, values: Union[float, np.ndarray], name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0:
        return np.full(graph.n, float(arr))
    if arr.shape != (graph.n,):
        raise InputError(f"{name}: taille {arr.shape}, attendu ({graph.n},)")
    return arr.copy()


class VariationalProblem:
    """
    Structure commune aux résolutions: sommets libres, sommets fixés,
    arêtes actives (deux extrémités actives, au moins une libre).
    """

    def __init__(self, graph: NetGraph, p: float, free: np.ndarray, fixed: np.ndarray,
                 values: np.ndarray, lam: float = 0.0, f: Optional[np.ndarray] = None):
        self.graph = graph
        self.p = check_p(p)
        self.lam = float(lam)
        self.c = graph.conductance_factor
        self.m = graph.vertex_mass

        self.free = as_mask(graph.n, free)
        self.fixed = as_mask(graph.n, fixed) & ~self.free
        active = self.free | self.fixed
        i, j = graph.edges[:, 0], graph.edges[:, 1]
        keep = active[i] & active[j] & (self.free[i] | self.free[j])
        self.ei, self.ej = i[keep], j[keep]

        self.free_idx = np.flatnonzero(self.free)
        self.pos = np.full(graph.n, -1, dtype=np.int64)
        self.pos[self.free_idx] = np.arange(self.free_idx.size)

        self.base = np.zeros(graph.n)
        self.base[self.fixed] = np.asarray(values, dtype=float)[self.fixed]
        f_full = np.zeros(graph.n) if f is None else np.asarray(f, dtype=float)
        self.f_free = f_full[self.free_idx]

    @property
    def size(self) -> int:
        return int(self.free_idx.size)

    def check_well_posed(self) -> None:
        """Chaque composante libre doit toucher un sommet fixé si lambda = 0."""
        if self.lam > 0 or self.size == 0:
            return
        n = self.graph.n
        adj = sparse.coo_matrix((np.ones(self.ei.size), (self.ei, self.ej)), shape=(n, n))
        _, labels = csgraph.connected_components(adj, directed=False)
        anchored = np.unique(labels[self.fixed])
        floating = np.setdiff1d(np.unique(labels[self.free_idx]), anchored)
        if floating.size:
            raise IllPosedError(f"{floating.size} composante(s) libre(s) sans bord et lambda = 0")

    def full(self, x: np.ndarray) -> np.ndarray:
        u = self.base.copy()
        u[self.free_idx] = x
        return u

    def edge_energy(self, u: np.ndarray) -> float:
        return float(self.c * np.sum(np.abs(u[self.ej] - u[self.ei]) ** self.p))

    def objective(self, x: np.ndarray) -> float:
        u = self.full(x)
        value = self.edge_energy(u) / self.p
        if self.lam > 0:
            value += self.lam * self.m / self.p * np.sum(np.abs(x) ** self.p)
        return float(value - self.m * np.dot(self.f_free, x))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        u = self.full(x)
        flux = self.c * signed_power(u[self.ej] - u[self.ei], self.p - 1.0)
        g = np.zeros(self.graph.n)
        np.add.at(g, self.ej, flux)
        np.add.at(g, self.ei, -flux)
        grad = g[self.free_idx] - self.m * self.f_free
        if self.lam > 0:
            grad += self.lam * self.m * signed_power(x, self.p - 1.0)
        return grad

    def kkt_residual(self, x: np.ndarray) -> float:
        if self.size == 0:
            return 0.0
        scale = self.c * max(1.0, float(np.max(np.abs(self.full(x))))) ** (self.p - 1.0)
        return float(np.max(np.abs(self.gradient(x))) / scale)

    def matrix(self, w_edge: np.ndarray, w_vertex: Optional[np.ndarray] = None) -> sparse.csr_matrix:
        """c L_w + lambda m diag(w_vertex), restreinte aux sommets libres."""
        k = self.size
        a, b = self.pos[self.ei], self.pos[self.ej]
        w = self.c * w_edge
        rows, cols, data = [], [], []
        for end in (a, b):
            sel = end >= 0
            rows.append(end[sel])
            cols.append(end[sel])
            data.append(w[sel])
        both = (a >= 0) & (b >= 0)
        rows += [a[both], b[both]]
        cols += [b[both], a[both]]
        data += [-w[both], -w[both]]
        if self.lam > 0:
            diag = np.ones(k) if w_vertex is None else w_vertex
            rows.append(np.arange(k))
            cols.append(np.arange(k))
            data.append(self.lam * self.m * diag)
        return sparse.csr_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))), shape=(k, k)
        )

    def quadratic_start(self, opts: SolverOptions) -> np.ndarray:
        """Solution du problème à p = 2 (point de départ, exacte si p = 2)."""
        A = self.matrix(np.ones(self.ei.size))
        rhs = self.m * self.f_free.copy()
        a, b = self.pos[self.ei], self.pos[self.ej]
        w = self.c * np.ones(self.ei.size)
        sel = (a >= 0) & (b < 0)
        np.add.at(rhs, a[sel], w[sel] * self.base[self.ej[sel]])
        sel = (b >= 0) & (a < 0)
        np.add.at(rhs, b[sel], w[sel] * self.base[self.ei[sel]])
        return _linear_solve(A, rhs, opts)


def _linear_solve(A: sparse.csr_matrix, rhs: np.ndarray, opts: SolverOptions) -> np.ndarray:
    if A.shape[0] <= opts.direct_limit:
        return np.atleast_1d(splinalg.spsolve(A.tocsc(), rhs))
    x, info = splinalg.cg(A, rhs, rtol=opts.inner_tol, maxiter=10 * A.shape[0])
    if info != 0:
        logger.warning(f"Gradient conjugué non convergé (info={info})")
    return x


def _line_search(problem: VariationalProblem, x: np.ndarray, direction: np.ndarray,
                 grad: np.ndarray, j0: float, candidates) -> Optional[tuple]:
    slope = float(np.dot(grad, direction))
    if not slope < 0:
        return None
    best = None
    for t in candidates:
        value = problem.objective(x + t * direction)
        if value <= j0 + ARMIJO * t * slope and (best is None or value < best[1]):
            best = (t, value)
    if best is not None:
        return best
    t = min(candidates)
    for _ in range(60):
        t *= 0.5
        value = problem.objective(x + t * direction)
        if value <= j0 + ARMIJO * t * slope:
            return t, value
    return None


def _irls(problem: VariationalProblem, x: np.ndarray, opts: SolverOptions) -> tuple:
    p = problem.p
    newton = 1.0 / (p - 1.0)
    j0 = problem.objective(x)
    for it in range(1, opts.max_iters + 1):
        grad = problem.gradient(x)
        residual = problem.kkt_residual(x)
        if residual <= opts.kkt_tol:
            return x, it - 1, residual
        u = problem.full(x)
        s = max(float(np.max(np.abs(u))), np.finfo(float).tiny)
        mu = opts.reg_floor * s * s
        d = u[problem.ej] - u[problem.ei]
        w_edge = (d * d + mu) ** ((p - 2.0) / 2.0)
        w_vertex = (x * x + mu) ** ((p - 2.0) / 2.0) if problem.lam > 0 else None
        top = max(float(w_edge.max(initial=0.0)), float(0.0 if w_vertex is None else w_vertex.max(initial=0.0)))
        w_edge = np.maximum(w_edge, 1e-10 * top)
        if w_vertex is not None:
            w_vertex = np.maximum(w_vertex, 1e-10 * top)
        direction = -_linear_solve(problem.matrix(w_edge, w_vertex), grad, opts)
        step = _line_search(problem, x, direction, grad, j0, sorted({newton, 1.0}))
        if step is None:
            return x, it, residual
        t, j1 = step
        x = x + t * direction
        logger.debug(f"IRLS it={it} t={t:.3g} J={j1:.12g} kkt={residual:.3e}")
        if j0 - j1 <= opts.tol * max(1.0, abs(j1)) and problem.kkt_residual(x) <= opts.accept_tol:
            return x, it, problem.kkt_residual(x)
        j0 = j1
    return x, opts.max_iters, problem.kkt_residual(x)


def _gradient_descent(problem: VariationalProblem, x: np.ndarray, opts: SolverOptions) -> tuple:
    # Préconditionneur: matrice du problème quadratique (p = 2), factorisée une fois
    precond = splinalg.factorized(problem.matrix(np.ones(problem.ei.size)).tocsc())
    j0 = problem.objective(x)
    t = 1.0
    for it in range(1, opts.max_iters + 1):
        grad = problem.gradient(x)
        residual = problem.kkt_residual(x)
        if residual <= opts.kkt_tol:
            return x, it - 1, residual
        direction = -precond(grad)
        step = _line_search(problem, x, direction, grad, j0, [2.0 * t])
        if step is None:
            return x, it, residual
        t, j1 = step
        x = x + t * direction
        if j0 - j1 <= opts.tol * max(1.0, abs(j1)) and problem.kkt_residual(x) <= opts.accept_tol:
            return x, it, problem.kkt_residual(x)
        j0 = j1
    return x, opts.max_iters, problem.kkt_residual(x)


def solve_variational(problem: VariationalProblem, opts: Optional[SolverOptions] = None) -> Solution:
    """
    Minimise l'objectif du problème variationnel.

    Raises:
        IllPosedError: Composante libre sans bord avec lambda = 0
        ConvergenceError: Résidu KKT au-dessus de accept_tol à l'arrêt
    """
    opts = opts or SolverOptions()
    problem.check_well_posed()
    if problem.size == 0:
        u = problem.full(np.zeros(0))
        return Solution(u, 0, problem.edge_energy(u), 0.0, problem.objective(np.zeros(0)), opts.method)

    x = problem.quadratic_start(opts)
    p = problem.p
    method = opts.method
    if method == 'irls' and not IRLS_P_RANGE[0] <= p <= IRLS_P_RANGE[1]:
        method = 'gradient'

    if p == 2.0:
        iterations, residual = 1, problem.kkt_residual(x)
    elif method == 'irls':
        x, iterations, residual = _irls(problem, x, opts)
    else:
        x, iterations, residual = _gradient_descent(problem, x, opts)

    if not residual <= opts.accept_tol:
        raise ConvergenceError(
            f"Solveur {method} non convergé (p={p}, résidu {residual:.3e}, {iterations} itérations)",
            residual=residual,
            iterations=iterations,
        )
    u = problem.full(x)
    logger.debug(f"Résolution {method} terminée: {iterations} itérations, résidu {residual:.3e}")
    return Solution(u, int(iterations), problem.edge_energy(u), residual, problem.objective(x), method)


def solve_dirichlet(problem: DirichletProblem, opts: Optional[SolverOptions] = None) -> Solution:
    """
    Extension p-harmonique (ou solution de Poisson) avec données g sur le bord.

    Returns:
        Solution: u = g sur le bord, solution sur U, 0 au-delà

    Raises:
        InputError: U vide
        IllPosedError: Bord vide avec lambda = 0
        ConvergenceError: Non-convergence
    """
    if problem.U.size == 0:
        raise InputError("Domaine U vide")
    if problem.ring.size == 0 and problem.lam == 0:
        raise IllPosedError("Bord vide et lambda = 0: problème mal posé")
    variational = VariationalProblem(problem.graph, problem.p, problem.U, problem.ring,
                                     problem.g, problem.lam, problem.f)
    return solve_variational(variational, opts)


def solve_poisson(graph: NetGraph, U: Iterable[int], f: Union[float, np.ndarray], p: float,
                  lam: float = 0.0, opts: Optional[SolverOptions] = None) -> Solution:
    """
    -Delta_p u + lambda m |u|^(p-2) u = m f sur U, u = 0 sur le bord.
    """
    problem = DirichletProblem(graph, np.asarray(list(U) if not isinstance(U, np.ndarray) else U),
                               np.zeros(graph.n), p, lam, f)
    return solve_dirichlet(problem, opts)
