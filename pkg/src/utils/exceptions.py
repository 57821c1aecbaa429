"""
Exceptions du projet potentiel_p.

Chaque catégorie d'erreur correspond à un code de sortie de la CLI
(voir scripts/main.py): 2 pour les erreurs d'entrée, 1 pour les échecs
de convergence.
"""


class PotentielError(Exception):
    """Racine de toutes les erreurs du projet."""


class DomainError(PotentielError, ValueError):
    """Argument hors du domaine de définition (ex: rayon négatif)."""


class InputError(PotentielError, ValueError):
    """Entrée invalide: ensemble vide, plaques qui se recouvrent, etc."""


class GeometryError(PotentielError, ValueError):
    """Configuration géométrique inexploitable (anneau vide, boule hors du nuage)."""


class IllPosedError(PotentielError, ValueError):
    """Problème de Dirichlet mal posé (pas de bord et lambda = 0)."""


class ConfigError(PotentielError, ValueError):
    """Configuration absente ou invalide."""


class ResourceError(PotentielError, RuntimeError):
    """Taille de problème au-delà de la limite configurée."""


class ConvergenceError(PotentielError, RuntimeError):
    """
    Le solveur n'a pas convergé.

    Attributes:
        residual (float): Résidu KKT au moment de l'arrêt
        iterations (int): Nombre d'itérations effectuées
        details (dict): Meilleures bornes connues (ex: module p)
    """

    def __init__(self, message, residual=float('nan'), iterations=0, details=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.details = details or {}
