"""
Graphes des espaces modèles: nuage, epsilon-réseau et graphe en un appel.
"""

from typing import Optional

from src.netgraph.graph import NetGraph, build_graph
from src.scaling import PowerScaling
from src.spaces import NetSpec, extract_epsnet, generate_space
from src.utils.exceptions import InputError


def default_epsilon(kind: str, level: int, scale: float = 1.0) -> float:
    """Pas du nuage: epsilon pour lequel le réseau garde tous les points."""
    if kind in ('interval', 'lattice2d'):
        return scale / max(level, 1)
    if kind == 'carpet':
        return scale * 3.0 ** (-level)
    if kind == 'gasket':
        return scale * 2.0 ** (-level)
    raise InputError(f"Type d'espace inconnu: {kind}")


def model_graph(kind: str, level: int, epsilon: Optional[float] = None, scale: float = 1.0,
                seed: Optional[int] = None, p: float = 2.0, beta: Optional[float] = None,
                strict: bool = True) -> NetGraph:
    """
    Graphe d'approximation d'un espace modèle avec Phi(r) = r^d_h et
    Psi(r) = r^beta (beta = p par défaut, à recalibrer par balayage).
    """
    cloud = generate_space(kind, level, scale)
    eps = default_epsilon(kind, level, scale) if epsilon is None else float(epsilon)
    net = extract_epsnet(cloud, NetSpec(eps, seed))
    phi = PowerScaling(cloud.d_h, 1.0, 'volume')
    psi = PowerScaling(float(p if beta is None else beta), 1.0, 'walk')
    return build_graph(cloud, net, eps, phi, psi, strict=strict)
