"""
Graphe d'approximation (V, E) associé à un epsilon-réseau.

Les sommets sont les points du réseau, indexés 0..n-1. Deux sommets sont
reliés lorsque leurs boules ouvertes de rayon 5/4 epsilon se rencontrent,
c'est-à-dire lorsque leur distance est < 5/2 epsilon.
"""

from collections import OrderedDict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse, spatial
from scipy.sparse import csgraph

from src.scaling import PowerScaling
from src.spaces import PointCloud
from src.utils.exceptions import InputError
from src.utils.logger_config import setup_logger

logger = setup_logger('netgraph', 'netgraph.log')

EDGE_FACTOR = 2.5

# sources gardées en cache par graphe (un tableau de n flottants chacune)
DISTANCE_CACHE_SIZE = 256

# sources par appel de Dijkstra hors cache
DISTANCE_CHUNK = 64


@dataclass(eq=False)
class NetGraph:
    """
    Graphe pondéré par les longueurs euclidiennes des arêtes.

    Attributes:
        coords (np.ndarray): Coordonnées des sommets, forme (n, d)
        edges (np.ndarray): Arêtes (i, j) avec i < j, triées, forme (m, 2)
        lengths (np.ndarray): Longueur de chaque arête
        epsilon (float): Échelle du réseau
        phi (PowerScaling): Fonction de volume
        psi (PowerScaling): Fonction d'échelle de marche
        meta (dict): Provenance (type d'espace, niveau, d_h...)
    """

    coords: np.ndarray
    edges: np.ndarray
    lengths: np.ndarray
    epsilon: float
    phi: PowerScaling
    psi: PowerScaling
    meta: Dict[str, Any] = field(default_factory=dict)
    connected: bool = True

    def __post_init__(self):
        self.coords = np.asarray(self.coords, dtype=float)
        if self.coords.ndim == 1:
            self.coords = self.coords[:, None]
        self.edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        self.lengths = np.asarray(self.lengths, dtype=float).reshape(-1)
        if self.edges.shape[0] != self.lengths.shape[0]:
            raise InputError("Nombre d'arêtes et de longueurs incohérent")
        if self.edges.size and (np.any(self.edges[:, 0] >= self.edges[:, 1]) or self.edges.max() >= self.n):
            raise InputError("Arêtes invalides: il faut i < j < n")
        self._distance_cache: "OrderedDict[int, np.ndarray]" = OrderedDict()

    @property
    def n(self) -> int:
        return int(self.coords.shape[0])

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @property
    def vertex_mass(self) -> float:
        """Masse Phi(epsilon) portée par chaque sommet."""
        return float(self.phi(self.epsilon))

    @property
    def conductance_factor(self) -> float:
        """Facteur Phi(epsilon)/Psi(epsilon) de la p-énergie."""
        return float(self.phi(self.epsilon) / self.psi(self.epsilon))

    @property
    def d_h(self) -> float:
        return float(self.meta.get('d_h', self.phi.exponent))

    @cached_property
    def adjacency(self) -> sparse.csr_matrix:
        """Matrice symétrique des longueurs d'arêtes (format CSR)."""
        i, j = self.edges[:, 0], self.edges[:, 1]
        rows = np.concatenate([i, j])
        cols = np.concatenate([j, i])
        data = np.concatenate([self.lengths, self.lengths])
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def neighbors(self, v: int) -> np.ndarray:
        adj = self.adjacency
        return adj.indices[adj.indptr[v]:adj.indptr[v + 1]]

    def mass(self, vertices: Optional[Iterable[int]] = None) -> float:
        """m(A) = Phi(epsilon) * #A."""
        if vertices is None:
            return self.vertex_mass * self.n
        return self.vertex_mass * int(np.unique(np.asarray(list(vertices), dtype=np.int64)).size)

    def nearest_vertex(self, point: Sequence[float]) -> int:
        """Sommet le plus proche (euclidien) d'un point de l'espace ambiant."""
        x = np.asarray(point, dtype=float).reshape(-1)[: self.coords.shape[1]]
        return int(np.argmin(np.linalg.norm(self.coords - x, axis=1)))

    def intrinsic_distances(self, source: int) -> np.ndarray:
        """Distances d^(eps) depuis un sommet (cache LRU de DISTANCE_CACHE_SIZE sources)."""
        source = int(source)
        cached = self._distance_cache.get(source)
        if cached is not None:
            self._distance_cache.move_to_end(source)
            return cached
        cached = csgraph.dijkstra(self.adjacency, directed=False, indices=source)
        self._distance_cache[source] = cached
        if len(self._distance_cache) > DISTANCE_CACHE_SIZE:
            self._distance_cache.popitem(last=False)
        return cached

    def iter_distance_rows(self, sources: Sequence[int], chunk: int = DISTANCE_CHUNK):
        """
        Parcourt les distances depuis plusieurs sources par blocs, sans cache.

        Yields:
            Tuple[np.ndarray, np.ndarray]: (sources du bloc, distances de forme (bloc, n))
        """
        sources = np.asarray(sources, dtype=np.int64).reshape(-1)
        for start in range(0, sources.size, chunk):
            block = sources[start:start + chunk]
            yield block, csgraph.dijkstra(self.adjacency, directed=False, indices=block)

    @property
    def cached_sources(self) -> int:
        return len(self._distance_cache)

    def with_psi(self, psi: PowerScaling) -> 'NetGraph':
        """Même graphe avec une autre fonction d'échelle Psi."""
        return NetGraph(self.coords, self.edges, self.lengths, self.epsilon, self.phi, psi,
                        dict(self.meta), self.connected)

    def to_dict(self) -> Dict[str, Any]:
        vertices = [[i] + row for i, row in enumerate(self.coords.tolist())]
        edges = [[int(a), int(b), float(l)] for (a, b), l in zip(self.edges.tolist(), self.lengths.tolist())]
        return {
            'epsilon': self.epsilon,
            'phi': {'exp': self.phi.exponent, 'coeff': self.phi.coeff},
            'psi': {'exp': self.psi.exponent, 'coeff': self.psi.coeff},
            'vertices': vertices,
            'edges': edges,
            'meta': self.meta,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'NetGraph':
        vertices = sorted(data['vertices'], key=lambda row: row[0])
        coords = np.asarray([row[1:] for row in vertices], dtype=float)
        raw_edges = data.get('edges', [])
        edges = np.asarray([[e[0], e[1]] for e in raw_edges], dtype=np.int64).reshape(-1, 2)
        lengths = np.asarray([e[2] for e in raw_edges], dtype=float)
        graph = cls(
            coords=coords,
            edges=edges,
            lengths=lengths,
            epsilon=float(data['epsilon']),
            phi=PowerScaling.from_dict(data['phi'], role='volume'),
            psi=PowerScaling.from_dict(data['psi'], role='walk'),
            meta=dict(data.get('meta', {})),
        )
        graph.connected = is_connected(graph)
        return graph

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[Tuple[int, int]], lengths: Optional[Sequence[float]] = None,
                   epsilon: float = 1.0, phi: Optional[PowerScaling] = None,
                   psi: Optional[PowerScaling] = None, coords: Optional[np.ndarray] = None) -> 'NetGraph':
        """
        Graphe jouet à partir d'une liste d'arêtes (tests, petits exemples).

        Par défaut toutes les longueurs valent epsilon et Phi = Psi = r,
        ce qui donne un facteur de conductance 1 et une masse epsilon.
        """
        pairs = np.asarray([(min(a, b), max(a, b)) for a, b in edges], dtype=np.int64).reshape(-1, 2)
        if lengths is None:
            lens = np.full(pairs.shape[0], float(epsilon))
        else:
            lens = np.asarray(lengths, dtype=float)
        order = np.lexsort((pairs[:, 1], pairs[:, 0])) if pairs.size else np.arange(0)
        if coords is None:
            coords = np.arange(n, dtype=float)[:, None] * epsilon
        graph = cls(
            coords=coords,
            edges=pairs[order],
            lengths=lens[order],
            epsilon=float(epsilon),
            phi=phi or PowerScaling(1.0, 1.0, 'volume'),
            psi=psi or PowerScaling(1.0, 1.0, 'walk'),
        )
        graph.connected = is_connected(graph)
        return graph


def is_connected(graph: NetGraph) -> bool:
    if graph.n <= 1:
        return True
    count, _ = csgraph.connected_components(graph.adjacency, directed=False)
    return count == 1


def build_graph(cloud: PointCloud, net: np.ndarray, epsilon: float, phi: PowerScaling,
                psi: PowerScaling, strict: bool = True) -> NetGraph:
    """
    Construit le graphe d'approximation d'un epsilon-réseau.

    Args:
        cloud (PointCloud): Nuage de points source
        net (np.ndarray): Indices des points du réseau dans le nuage
        epsilon (float): Échelle du réseau
        phi (PowerScaling): Fonction de volume
        psi (PowerScaling): Fonction d'échelle de marche
        strict (bool): Règle d < 5/2 epsilon (True) ou d <= 5/2 epsilon (False)

    Returns:
        NetGraph: Graphe construit (drapeau connected à False si non connexe)
    """
    net = np.asarray(net, dtype=np.int64)
    coords = cloud.points[net]
    radius = EDGE_FACTOR * epsilon

    tree = spatial.cKDTree(coords)
    pairs = tree.query_pairs(r=radius, output_type='ndarray')
    if pairs.size:
        pairs = np.sort(pairs, axis=1)
        lengths = np.linalg.norm(coords[pairs[:, 0]] - coords[pairs[:, 1]], axis=1)
        keep = lengths < radius if strict else lengths <= radius
        pairs, lengths = pairs[keep], lengths[keep]
        order = np.lexsort((pairs[:, 1], pairs[:, 0]))
        pairs, lengths = pairs[order], lengths[order]
    else:
        pairs = np.zeros((0, 2), dtype=np.int64)
        lengths = np.zeros(0)

    meta = {'kind': cloud.kind, 'level': cloud.level, 'scale': cloud.scale, 'd_h': cloud.d_h}
    graph = NetGraph(coords, pairs, lengths, float(epsilon), phi, psi, meta)
    graph.connected = is_connected(graph)
    if not graph.connected:
        logger.warning(f"Graphe non connexe ({graph.n} sommets, epsilon={epsilon:.6g})")
    logger.info(f"Graphe construit: {graph.n} sommets, {graph.m} arêtes, degré max {int(graph.degrees.max(initial=0))}")
    return graph
