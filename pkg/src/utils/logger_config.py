"""
Configuration du logger pour le projet potentiel_p.
"""

import os
import logging
import sys
from logging.handlers import RotatingFileHandler

from dotenv import load_dotenv

# Obtenir le chemin racine du projet
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Variables d'environnement (.env à la racine si présent)
load_dotenv(os.path.join(PROJECT_ROOT, '.env'))

# Chemin du dossier de logs (surchargeable par variable d'environnement)
LOGS_DIR = os.environ.get('POTENTIEL_LOGS_DIR', os.path.join(PROJECT_ROOT, 'results', 'logs'))


def setup_logger(logger_name, log_file, level=logging.INFO):
    """
    Configure un logger avec un format spécifique.

    Les handlers ne sont attachés qu'une seule fois par nom de logger, ce qui
    permet d'importer un module plusieurs fois (tests, sous-commandes) sans
    dupliquer les lignes de log.

    Args:
        logger_name (str): Nom du logger
        log_file (str): Nom du fichier de log
        level (int): Niveau de log

    Returns:
        logging.Logger: Logger configuré
    """
    # Créer le logger
    logger = logging.getLogger(logger_name)
    logger.setLevel(level)

    if getattr(logger, '_potentiel_configured', False):
        return logger

    # Définir le format du log
    formatter = logging.Formatter('%(asctime)s [%(levelname)s] %(message)s')

    # Handler pour la console
    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # Handler pour le fichier
    try:
        os.makedirs(LOGS_DIR, exist_ok=True)
        file_path = os.path.join(LOGS_DIR, log_file)
        file_handler = RotatingFileHandler(
            file_path, maxBytes=10485760, backupCount=5
        )
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    except OSError as e:
        # Répertoire en lecture seule: on garde uniquement la console
        logger.warning(f"Impossible d'ouvrir le fichier de log {log_file}: {e}")

    logger.propagate = False
    logger._potentiel_configured = True
    return logger
