"""
Cache disque des graphes (JSON stable).
"""

from src.netgraph.graph import NetGraph
from src.utils.exceptions import InputError
from src.utils.logger_config import setup_logger
from src.utils.reporting import read_json, write_json

logger = setup_logger('graph_cache', 'netgraph.log')


def save_graph(graph: NetGraph, path: str) -> str:
    """
    Écrit le graphe au format {epsilon, phi, psi, vertices, edges, meta}.
    Deux graphes identiques donnent des fichiers identiques.
    """
    return write_json(graph.to_dict(), path)


def load_graph(path: str) -> NetGraph:
    """
    Relit un graphe écrit par save_graph.

    Raises:
        InputError: Fichier absent ou mal formé
    """
    try:
        graph = NetGraph.from_dict(read_json(path))
    except FileNotFoundError as e:
        raise InputError(f"Fichier de graphe introuvable: {path}") from e
    except (KeyError, ValueError, TypeError) as e:
        raise InputError(f"Fichier de graphe invalide {path}: {e}") from e
    logger.info(f"Graphe chargé depuis {path}: {graph.n} sommets, {graph.m} arêtes")
    return graph
