"""
Générateur de nuages de points pour les espaces modèles.
Ce module produit des approximations finies de l'intervalle, d'un carré
de réseau, du tapis de Sierpiński et du triangle de Sierpiński.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from src.utils.exceptions import DomainError, InputError, ResourceError
from src.utils.logger_config import setup_logger

# Configuration du logger
logger = setup_logger('spaces', 'spaces.log')

KINDS = ('interval', 'lattice2d', 'carpet', 'gasket')

# Dimension de Hausdorff de chaque type d'espace
HAUSDORFF_DIM = {
    'interval': 1.0,
    'lattice2d': 2.0,
    'carpet': math.log(8) / math.log(3),
    'gasket': math.log(3) / math.log(2),
}

DEFAULT_MAX_POINTS = 10 ** 6


@dataclass
class PointCloud:
    """
    Nuage fini jouant le rôle de l'espace X.

    Attributes:
        points (np.ndarray): Coordonnées, forme (n, d) avec d = 1 ou 2
        kind (str): Type d'espace
        level (int): Niveau de raffinement (côté k pour lattice2d)
        scale (float): Côté du carré englobant
        d_h (float): Dimension de Hausdorff du type
    """

    points: np.ndarray
    kind: str
    level: int
    scale: float
    d_h: float

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind,
            'level': self.level,
            'scale': self.scale,
            'points': self.points.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PointCloud':
        kind = data['kind']
        points = np.asarray(data['points'], dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        return cls(points, kind, int(data['level']), float(data['scale']), HAUSDORFF_DIM[kind])


def expected_count(kind: str, level: int) -> int:
    """
    Nombre de points produits par generate_space.

    Args:
        kind (str): Type d'espace
        level (int): Niveau

    Returns:
        int: Nombre de points
    """
    if kind == 'interval':
        return level + 1
    if kind == 'lattice2d':
        return (level + 1) ** 2
    if kind == 'carpet':
        return 8 ** level
    if kind == 'gasket':
        return 3 ** level
    raise InputError(f"Type d'espace inconnu: {kind}")


def _carpet_centers(level: int, scale: float) -> np.ndarray:
    # Indices entiers des cellules conservées, construits chiffre par chiffre en base 3
    cells = np.zeros((1, 2), dtype=np.int64)
    digits = np.array([(i, j) for i in range(3) for j in range(3) if (i, j) != (1, 1)], dtype=np.int64)
    for _ in range(level):
        cells = (3 * cells[:, None, :] + digits[None, :, :]).reshape(-1, 2)
    side = scale * 3.0 ** (-level)
    return (cells + 0.5) * side


def _gasket_centers(level: int, scale: float) -> np.ndarray:
    # Coins inférieurs gauches des sous-triangles de côté scale * 2^-level
    corners = np.zeros((1, 2))
    offsets = np.array([[0.0, 0.0], [0.5, 0.0], [0.25, math.sqrt(3) / 4.0]])
    side = scale
    for _ in range(level):
        corners = (corners[:, None, :] + side * offsets[None, :, :]).reshape(-1, 2)
        side /= 2.0
    return corners + np.array([side / 2.0, side * math.sqrt(3) / 6.0])


def generate_space(kind: str, level: int, scale: float = 1.0,
                   max_points: int = DEFAULT_MAX_POINTS) -> PointCloud:
    """
    Génère le nuage de points d'un espace modèle.

    Args:
        kind (str): 'interval', 'lattice2d', 'carpet' ou 'gasket'
        level (int): Niveau (pour lattice2d: côté k >= 1 de la boîte)
        scale (float): Côté du carré englobant
        max_points (int): Nombre maximal de points autorisé

    Returns:
        PointCloud: Nuage généré

    Raises:
        InputError: Type inconnu ou niveau invalide
        ResourceError: Nombre de points au-delà de max_points
    """
    if kind not in KINDS:
        raise InputError(f"Type d'espace inconnu: {kind}")
    if level < 0 or (kind == 'lattice2d' and level < 1):
        raise InputError(f"Niveau invalide pour {kind}: {level}")
    if not scale > 0:
        raise DomainError(f"L'échelle doit être positive: {scale}")

    count = expected_count(kind, level)
    if count > max_points:
        raise ResourceError(f"{kind} niveau {level}: {count} points > limite {max_points}")

    logger.info(f"Génération de l'espace {kind} (niveau {level}, échelle {scale}): {count} points")

    if kind == 'interval':
        points = np.linspace(0.0, scale, level + 1)[:, None] if level > 0 else np.zeros((1, 1))
    elif kind == 'lattice2d':
        grid = np.arange(level + 1) * (scale / level)
        xx, yy = np.meshgrid(grid, grid, indexing='ij')
        points = np.column_stack([xx.ravel(), yy.ravel()])
    elif kind == 'carpet':
        points = _carpet_centers(level, scale)
    else:
        points = _gasket_centers(level, scale)

    return PointCloud(points=points, kind=kind, level=level, scale=float(scale), d_h=HAUSDORFF_DIM[kind])
