"""
Chargeur de configuration pour les expériences potentiel_p.
"""

import hashlib
import json
import os
from typing import Dict, Any, Optional

import tomli
import yaml

from src.utils.exceptions import ConfigError
from src.utils.logger_config import LOGS_DIR, setup_logger

# Obtenir le chemin racine du projet
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Chemin par défaut vers le fichier de configuration
DEFAULT_CONFIG_PATH = os.path.join(PROJECT_ROOT, 'config', 'config.yaml')

logger = setup_logger('config_loader', 'config.log')


def _parse(config_file, config_path: str) -> Any:
    if config_path.lower().endswith('.toml'):
        return tomli.loads(config_file.read())
    return yaml.safe_load(config_file)


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Charge la configuration depuis un fichier YAML ou TOML (suffixe .toml).

    Sans chemin explicite, le fichier par défaut est lu et une erreur de
    lecture est journalisée ({} retourné). Un chemin explicite illisible ou
    mal formé lève une ConfigError.

    Args:
        config_path (str, optional): Chemin vers le fichier de configuration

    Returns:
        Dict[str, Any]: Configuration chargée

    Raises:
        ConfigError: Fichier explicite mal formé, ou contenu qui n'est pas une table
    """
    explicit = config_path is not None
    if config_path is None:
        if not os.path.exists(DEFAULT_CONFIG_PATH):
            logger.warning("Aucun fichier de configuration trouvé à l'emplacement par défaut.")
            return {}
        config_path = DEFAULT_CONFIG_PATH

    try:
        with open(config_path, 'r', encoding='utf-8') as config_file:
            config = _parse(config_file, config_path)
    except (OSError, yaml.YAMLError, tomli.TOMLDecodeError) as e:
        logger.error(f"Erreur lors du chargement de la configuration {config_path}: {e}")
        if explicit:
            raise ConfigError(f"Configuration illisible {config_path}: {e}") from e
        return {}

    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ConfigError(f"La configuration {config_path} doit être une table de sections "
                          f"(reçu {type(config).__name__})")
    return config


def get_section(name: str, config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Récupère une section de la configuration.

    Args:
        name (str): Nom de la section (ex: 'solver')
        config (dict, optional): Configuration déjà chargée

    Returns:
        Dict[str, Any]: Section demandée ({} si absente)
    """
    if config is None:
        config = load_config()
    section = config.get(name, {})
    if section is None:
        return {}
    if not isinstance(section, dict):
        raise ConfigError(f"La section '{name}' doit être un dictionnaire")
    return section


def require(config: Dict[str, Any], dotted_key: str) -> Any:
    """
    Récupère une valeur obligatoire par clé pointée ('space.kind').

    Raises:
        ConfigError: Si la clé est absente
    """
    node: Any = config
    for part in dotted_key.split('.'):
        if not isinstance(node, dict) or part not in node:
            raise ConfigError(f"Champ de configuration manquant: {dotted_key}")
        node = node[part]
    return node


def validate_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """
    Vérifie les champs obligatoires d'une configuration d'expérience.

    Raises:
        ConfigError: Si un champ manque ou si p <= 1
    """
    for key in ('space.kind', 'space.level', 'space.scale', 'net.epsilon', 'p'):
        require(config, key)
    p = float(config['p'])
    if not p > 1.0:
        raise ConfigError(f"p doit être > 1 (reçu {p})")
    return config


def get_path(key: str) -> str:
    """
    Retourne un répertoire de travail du projet.

    Args:
        key (str): 'output_dir' ou 'logs_dir'

    Returns:
        str: Chemin absolu
    """
    if key == 'output_dir':
        default = os.path.join(PROJECT_ROOT, 'results', 'output')
        return os.environ.get('POTENTIEL_OUTPUT_DIR', default)
    if key == 'logs_dir':
        return LOGS_DIR
    raise ConfigError(f"Chemin inconnu: {key}")


def get_workers() -> int:
    """Nombre de workers pour les balayages (POTENTIEL_WORKERS, défaut 1)."""
    raw = os.environ.get('POTENTIEL_WORKERS', '1')
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning(f"POTENTIEL_WORKERS invalide ({raw}), utilisation de 1 worker")
        return 1


def canonical_config_hash(config: Dict[str, Any]) -> str:
    """
    Empreinte SHA-256 d'une configuration canonisée (clés triées).

    Returns:
        str: Empreinte hexadécimale
    """
    payload = json.dumps(config, sort_keys=True, separators=(',', ':'), default=str)
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()
