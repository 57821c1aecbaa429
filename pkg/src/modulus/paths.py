"""
Plus courts chemins pour une longueur portée par les sommets:
L_rho(theta) = somme des rho(z) sur les sommets du chemin, extrémités comprises.
"""

from heapq import heappop, heappush
from itertools import count
from typing import Iterable, List, Optional, Tuple

import numpy as np

from src.netgraph import NetGraph, as_mask
from src.utils.exceptions import InputError


def path_length(rho: np.ndarray, path: Iterable[int]) -> float:
    return float(sum(rho[v] for v in path))


def rho_shortest_path(graph: NetGraph, rho: np.ndarray, A0: Iterable[int], A1: Iterable[int],
                      A2: Optional[Iterable[int]] = None) -> Optional[Tuple[List[int], float]]:
    """
    Chemin de A0 vers A1 dans A2 de longueur L_rho minimale.

    Dijkstra multi-sources: le coût rho(w) est payé à l'entrée dans w,
    et rho(s) au départ de chaque source s.

    Returns:
        (chemin, longueur) ou None si aucun chemin n'existe
    """
    rho = np.asarray(rho, dtype=float)
    if rho.shape != (graph.n,):
        raise InputError(f"rho doit être de taille {graph.n}")
    if np.any(rho < 0):
        raise InputError("rho doit être positive")
    inside = as_mask(graph.n, A2)
    sources = as_mask(graph.n, A0) & inside
    targets = as_mask(graph.n, A1) & inside

    dist = {}
    pred = {}
    c = count()
    fringe = []
    for s in np.flatnonzero(sources):
        heappush(fringe, (float(rho[s]), next(c), int(s), -1))

    while fringe:
        d, _, v, parent = heappop(fringe)
        if v in dist:
            continue
        dist[v] = d
        pred[v] = parent
        if targets[v]:
            path = [v]
            while pred[path[-1]] >= 0:
                path.append(pred[path[-1]])
            return path[::-1], d
        for w in graph.neighbors(v):
            w = int(w)
            if inside[w] and w not in dist:
                heappush(fringe, (d + float(rho[w]), next(c), w, v))
    return None
