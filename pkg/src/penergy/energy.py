"""
p-énergie discrète, p-laplacien et mesure de Riesz.

    E_A(u)        = c * somme sur les arêtes de A de |u(z1) - u(z2)|^p
    Delta_p u(z)  = c * somme sur z' ~ z de |u(z') - u(z)|^(p-2) (u(z') - u(z))

avec c = Phi(epsilon)/Psi(epsilon). La mesure de Riesz est -Delta_p u,
sans division par la masse des sommets.
"""

from typing import Iterable, Optional

import numpy as np

from src.netgraph import NetGraph, as_mask
from src.utils.exceptions import DomainError, InputError


def signed_power(x: np.ndarray, q: float) -> np.ndarray:
    """sign(x) |x|^q, bien défini en 0 pour q > 0."""
    return np.sign(x) * np.abs(x) ** q


def check_p(p: float) -> float:
    p = float(p)
    if not p > 1.0:
        raise DomainError(f"p doit être > 1 (reçu {p})")
    return p


def edge_mask(graph: NetGraph, A: Optional[Iterable[int]] = None) -> np.ndarray:
    """Arêtes dont les deux extrémités sont dans A (toutes si A est None)."""
    if A is None:
        return np.ones(graph.m, dtype=bool)
    inside = as_mask(graph.n, A)
    return inside[graph.edges[:, 0]] & inside[graph.edges[:, 1]]


def energy(graph: NetGraph, u: np.ndarray, p: float, A: Optional[Iterable[int]] = None) -> float:
    """
    p-énergie de u restreinte aux arêtes dont les deux extrémités sont dans A.

    Args:
        graph (NetGraph): Graphe
        u (np.ndarray): Fonction de sommets
        p (float): Exposant (> 1)
        A: Ensemble de sommets (None = graphe entier)

    Returns:
        float: Énergie (>= 0)
    """
    p = check_p(p)
    u = np.asarray(u, dtype=float)
    if u.shape != (graph.n,):
        raise InputError(f"Fonction de taille {u.shape}, attendu ({graph.n},)")
    keep = edge_mask(graph, A)
    i, j = graph.edges[keep, 0], graph.edges[keep, 1]
    return float(graph.conductance_factor * np.sum(np.abs(u[i] - u[j]) ** p))


def p_laplacian(graph: NetGraph, u: np.ndarray, p: float,
                within: Optional[Iterable[int]] = None) -> np.ndarray:
    """
    p-laplacien discret. Avec `within`, seules les arêtes internes à cet
    ensemble sont prises en compte (u est nulle au-delà).

    Returns:
        np.ndarray: Delta_p u en chaque sommet
    """
    p = check_p(p)
    u = np.asarray(u, dtype=float)
    keep = edge_mask(graph, within)
    i, j = graph.edges[keep, 0], graph.edges[keep, 1]
    flux = signed_power(u[j] - u[i], p - 1.0)
    out = np.zeros(graph.n)
    np.add.at(out, i, flux)
    np.add.at(out, j, -flux)
    return graph.conductance_factor * out


def riesz_measure(graph: NetGraph, u: np.ndarray, p: float, U: Iterable[int],
                  within: Optional[Iterable[int]] = None, tol: Optional[float] = 1e-8) -> np.ndarray:
    """
    Mesure de Riesz mu[u] = -Delta_p u restreinte à U (nulle ailleurs).

    Args:
        tol (float, optional): Seuil de négativité toléré, relatif à
            c * max(1, |u|_inf)^(p-1); None désactive le contrôle

    Raises:
        InputError: Si u n'est pas surharmonique sur U (valeur < -tol)
    """
    mu = -p_laplacian(graph, u, p, within)
    inside = as_mask(graph.n, U)
    mu[~inside] = 0.0
    if tol is not None and mu.size:
        scale = graph.conductance_factor * max(1.0, float(np.max(np.abs(u)))) ** (p - 1.0)
        if mu.min() < -tol * scale:
            raise InputError(f"Mesure de Riesz négative ({mu.min():.3e}): u n'est pas surharmonique sur U")
    return mu
