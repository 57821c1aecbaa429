"""
Pipeline de vérification: exécute les contrôles d'acceptation et sauvegarde
un rapport d'exécution par contrôle.
"""

import time
import traceback
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from src.experiments.checks import CHECKS, FunctionCheck, get_check
from src.experiments.interfaces import CheckOutcome, VerificationRunner
from src.experiments.loaders import ReportLoader
from src.utils.config_loader import canonical_config_hash, load_config
from src.utils.exceptions import ConfigError, PotentielError
from src.utils.logger_config import setup_logger

# Configuration du logger
logger = setup_logger('verification_pipeline', 'experiments.log')


@dataclass
class RunReport:
    """
    Rapport d'exécution d'une commande.

    Attributes:
        command (str): Commande ou contrôle exécuté
        config_hash (str): Empreinte de la configuration canonisée
        wall_time (float): Durée en secondes
        outputs (List[str]): Fichiers écrits
        checks (Dict[str, bool]): Critères évalués
        status (str): 'passed', 'failed' ou 'error'
    """

    command: str
    config_hash: str
    wall_time: float = 0.0
    outputs: List[str] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    status: str = 'passed'
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'config_hash': self.config_hash,
            'wall_time': self.wall_time,
            'outputs': list(self.outputs),
            'checks': dict(self.checks),
            'status': self.status,
            'notes': list(self.notes),
        }


class VerificationPipeline(VerificationRunner):
    """
    Enchaîne les contrôles d'acceptation: exécution, écriture des tableaux
    CSV et des rapports JSON, puis synthèse.
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None, quick: bool = False,
                 only: Optional[Sequence[str]] = None, loader: Optional[ReportLoader] = None):
        """
        Initialise le pipeline.

        Args:
            config (Dict[str, Any], optional): Configuration (défaut: config/config.yaml)
            quick (bool): Tailles réduites
            only (Sequence[str], optional): Sous-ensemble de contrôles à exécuter
            loader (ReportLoader, optional): Écrivain de rapports

        Raises:
            ConfigError: Contrôle inconnu dans only
        """
        self.config = config if config is not None else load_config()
        self.quick = quick
        self.loader = loader or ReportLoader(self.config.get('output', {}).get('dir'))
        self.config_hash = canonical_config_hash(self.config)
        try:
            self.checks: List[FunctionCheck] = [get_check(name) for name in only] if only else list(CHECKS)
        except KeyError as e:
            raise ConfigError(f"Contrôle inconnu: {e.args[0]}") from e
        self.reports: List[RunReport] = []
        logger.info(f"Pipeline de vérification initialisé: {len(self.checks)} contrôles, quick={quick}")

    def execute(self, check: FunctionCheck) -> RunReport:
        """
        Exécute un contrôle et écrit ses sorties.

        Returns:
            RunReport: Rapport d'exécution du contrôle
        """
        report = RunReport(f"verify-all:{check.name}", self.config_hash)
        start = time.time()
        try:
            outcome: CheckOutcome = check.run(self.config, self.quick)
            for table, rows in sorted(outcome.tables.items()):
                if rows:
                    report.outputs.append(self.loader.write_report(rows, table, 'csv'))
            report.outputs.append(self.loader.write_report(outcome, f"check_{check.name}"))
            report.checks = dict(outcome.criteria)
            report.notes = list(outcome.notes)
            report.status = 'passed' if outcome.passed else 'failed'
        except PotentielError as e:
            logger.error(f"Contrôle {check.name} interrompu: {e}")
            report.status = 'error'
            report.notes.append(f"{type(e).__name__}: {e}")
        except Exception as e:
            logger.error(f"Erreur inattendue dans le contrôle {check.name}: {e}")
            logger.error(traceback.format_exc())
            report.status = 'error'
            report.notes.append(f"{type(e).__name__}: {e}")
        report.wall_time = time.time() - start
        logger.info(f"Contrôle {check.name}: {report.status} en {report.wall_time:.2f} secondes")
        return report

    def run(self) -> bool:
        """
        Exécute tous les contrôles sélectionnés.

        Returns:
            bool: True si tous les contrôles passent, False sinon
        """
        logger.info("Démarrage de la vérification")
        start = time.time()
        self.reports = [self.execute(check) for check in self.checks]
        summary = RunReport('verify-all', self.config_hash, time.time() - start,
                            checks={r.command.split(':', 1)[1]: r.status == 'passed' for r in self.reports})
        summary.status = 'passed' if all(summary.checks.values()) else 'failed'
        summary.outputs = [path for r in self.reports for path in r.outputs]
        self.loader.load({'run_report': summary})
        logger.info(f"Vérification terminée en {summary.wall_time:.2f} secondes: {summary.status}")
        return summary.status == 'passed'


def run_verification(config: Optional[Dict[str, Any]] = None, quick: bool = False,
                     only: Optional[Sequence[str]] = None) -> bool:
    """
    Fonction principale pour exécuter la suite de vérification.

    Returns:
        bool: True si tous les contrôles passent, False sinon
    """
    pipeline = VerificationPipeline(config, quick, only)
    return pipeline.run()
