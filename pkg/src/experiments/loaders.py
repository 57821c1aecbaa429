"""
Écriture des rapports de vérification.
Ce module se concentre sur une fonctionnalité essentielle: sauvegarder les
rapports en JSON et les tableaux de balayage en CSV, de façon reproductible.
"""

import os
from typing import Any, Dict, List, Optional

from src.experiments.interfaces import ReportWriter
from src.utils.config_loader import get_path
from src.utils.exceptions import InputError
from src.utils.logger_config import setup_logger
from src.utils.reporting import write_csv, write_json

# Configuration du logger
logger = setup_logger('report_loader', 'experiments.log')

FORMATS = ('json', 'csv')


class ReportLoader(ReportWriter):
    """
    Chargeur qui sauvegarde les rapports dans le répertoire de sortie.
    Les noms de fichiers sont déterministes: <name>.json ou <name>.csv.
    """

    def __init__(self, output_dir: Optional[str] = None):
        """
        Initialise le chargeur de rapports.

        Args:
            output_dir (str, optional): Répertoire de sortie (défaut: results/output)
        """
        self.output_dir = output_dir or get_path('output_dir')
        self.written: List[str] = []

        if not os.path.exists(self.output_dir):
            os.makedirs(self.output_dir)
            logger.info(f"Répertoire de sortie créé: {self.output_dir}")

    def _path(self, name: str, fmt: str) -> str:
        return os.path.join(self.output_dir, f"{name}.{fmt}")

    def write_report(self, report: Any, name: str, fmt: str = 'json') -> str:
        """
        Sauvegarde un rapport.

        Args:
            report (Any): Rapport JSON-isable, ou liste de lignes pour le CSV
            name (str): Nom de base du fichier
            fmt (str): 'json' ou 'csv'

        Returns:
            str: Chemin du fichier écrit

        Raises:
            InputError: Format inconnu
            OSError: Répertoire non inscriptible
        """
        if fmt not in FORMATS:
            raise InputError(f"Format de rapport inconnu: {fmt}")
        path = self._path(name, fmt)
        if fmt == 'json':
            write_json(report, path)
        else:
            rows = report if isinstance(report, list) else [report]
            write_csv(rows, path)
        self.written.append(path)
        return path

    def load(self, reports: Dict[str, Any]) -> int:
        """
        Sauvegarde plusieurs rapports JSON.

        Args:
            reports (Dict[str, Any]): Nom -> rapport

        Returns:
            int: Nombre de fichiers écrits
        """
        count = 0
        for name, report in reports.items():
            try:
                self.write_report(report, name)
                count += 1
            except OSError as e:
                logger.error(f"Erreur lors de la sauvegarde du rapport {name}: {e}")
        logger.info(f"Sauvegarde terminée: {count} rapports")
        return count
