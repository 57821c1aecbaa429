"""
Métrique intrinsèque, boules et anneaux sur le graphe d'approximation.

Les ensembles de sommets (VertexSet) sont des tableaux numpy d'indices
triés; les fonctions de sommets (VertexFn) sont des tableaux de taille n.
"""

from typing import Iterable, Optional

import numpy as np
from scipy.sparse import csgraph

from src.netgraph.graph import NetGraph
from src.utils.exceptions import DomainError, InputError

METRIC_KINDS = ('intrinsic', 'euclidean')


def as_mask(n: int, vertices: Optional[Iterable[int]]) -> np.ndarray:
    """Masque booléen de taille n; None désigne tous les sommets."""
    if vertices is None:
        return np.ones(n, dtype=bool)
    arr = np.asarray(vertices)
    if arr.dtype == bool:
        if arr.shape != (n,):
            raise InputError("Masque de taille incorrecte")
        return arr.copy()
    mask = np.zeros(n, dtype=bool)
    if arr.size:
        mask[arr.astype(np.int64)] = True
    return mask


def as_vertex_set(mask: np.ndarray) -> np.ndarray:
    return np.flatnonzero(mask)


def graph_metric(graph: NetGraph, source: int) -> np.ndarray:
    """
    Distances de plus court chemin depuis `source`, pondérées par les longueurs.

    Args:
        graph (NetGraph): Graphe
        source (int): Sommet source

    Returns:
        np.ndarray: Distances (inf pour les sommets non atteignables)
    """
    if not 0 <= int(source) < graph.n:
        raise InputError(f"Sommet inconnu: {source}")
    return graph.intrinsic_distances(int(source)).copy()


def distances(graph: NetGraph, center: int, metric_kind: str = 'intrinsic') -> np.ndarray:
    if metric_kind == 'intrinsic':
        return graph.intrinsic_distances(int(center))
    if metric_kind == 'euclidean':
        return np.linalg.norm(graph.coords - graph.coords[int(center)], axis=1)
    raise InputError(f"Métrique inconnue: {metric_kind}")


def ball(graph: NetGraph, center: int, r: float, metric_kind: str = 'intrinsic') -> np.ndarray:
    """
    Boule ouverte B(center, r) = {y : d(y, center) < r}.

    Returns:
        np.ndarray: Indices triés des sommets de la boule
    """
    if not r > 0:
        raise DomainError(f"Le rayon doit être > 0 (reçu {r})")
    return np.flatnonzero(distances(graph, center, metric_kind) < r)


def annulus(graph: NetGraph, center: int, r_in: float, r_out: float,
            metric_kind: str = 'intrinsic') -> np.ndarray:
    """
    Anneau B(center, r_out) privé de la boule fermée de rayon r_in.

    Returns:
        np.ndarray: Indices triés des sommets avec r_in < d < r_out
    """
    if not 0 <= r_in < r_out:
        raise DomainError(f"Rayons d'anneau invalides: {r_in}, {r_out}")
    d = distances(graph, center, metric_kind)
    return np.flatnonzero((d > r_in) & (d < r_out))


def boundary_ring(graph: NetGraph, U: Iterable[int]) -> np.ndarray:
    """Sommets hors de U ayant un voisin dans U."""
    inside = as_mask(graph.n, U)
    i, j = graph.edges[:, 0], graph.edges[:, 1]
    ring = np.zeros(graph.n, dtype=bool)
    ring[j[inside[i] & ~inside[j]]] = True
    ring[i[inside[j] & ~inside[i]]] = True
    return np.flatnonzero(ring)


def induced_components(graph: NetGraph, vertices: Iterable[int]) -> np.ndarray:
    """
    Composantes connexes du sous-graphe induit.

    Returns:
        np.ndarray: Étiquette de composante par sommet (-1 hors de l'ensemble)
    """
    mask = as_mask(graph.n, vertices)
    idx = np.flatnonzero(mask)
    labels = np.full(graph.n, -1, dtype=np.int64)
    if idx.size == 0:
        return labels
    sub = graph.adjacency[idx][:, idx]
    _, comp = csgraph.connected_components(sub, directed=False)
    labels[idx] = comp
    return labels


def outside_ball(graph: NetGraph, center: int, r: float, metric_kind: str = 'intrinsic') -> np.ndarray:
    """Complémentaire de B(center, r): sommets avec d >= r."""
    return np.flatnonzero(distances(graph, center, metric_kind) >= r)
