"""
Interfaces pour la suite de vérification.
Ce module définit les contrats entre les contrôles d'acceptation, les
écrivains de rapports et le pipeline qui les enchaîne.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class CheckOutcome:
    """
    Résultat d'un contrôle d'acceptation.

    Attributes:
        name (str): Nom du contrôle
        passed (bool): Tous les critères sont satisfaits
        criteria (Dict[str, bool]): Critère -> satisfait
        details (Dict[str, Any]): Mesures rapportées
        tables (Dict[str, List[dict]]): Tableaux à écrire en CSV
        notes (List[str]): Remarques non bloquantes
    """

    name: str
    passed: bool
    criteria: Dict[str, bool] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)
    tables: Dict[str, List[dict]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)


class AcceptanceCheck(ABC):
    """Interface pour un contrôle d'acceptation."""

    name: str = ''
    description: str = ''

    @abstractmethod
    def run(self, config: Dict[str, Any], quick: bool = False) -> CheckOutcome:
        """
        Exécute le contrôle.

        Args:
            config (Dict[str, Any]): Configuration complète
            quick (bool): Tailles réduites pour un essai rapide

        Returns:
            CheckOutcome: Résultat et mesures
        """
        pass


class ReportWriter(ABC):
    """Interface pour l'écriture des rapports."""

    @abstractmethod
    def write_report(self, report: Any, name: str, fmt: str = 'json') -> str:
        """
        Écrit un rapport.

        Args:
            report (Any): Rapport (dataclass, dict ou liste de lignes pour le CSV)
            name (str): Nom de base du fichier
            fmt (str): 'json' ou 'csv'

        Returns:
            str: Chemin du fichier écrit
        """
        pass


class VerificationRunner(ABC):
    """Interface pour l'exécution d'une suite de contrôles."""

    @abstractmethod
    def run(self) -> bool:
        """
        Exécute tous les contrôles sélectionnés.

        Returns:
            bool: True si tous les contrôles passent, False sinon
        """
        pass
