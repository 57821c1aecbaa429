"""
Sérialisation stable des rapports (JSON et CSV).

Deux exécutions avec la même configuration doivent produire des fichiers
identiques octet par octet: clés triées, flottants à 17 chiffres
significatifs, fins de ligne LF.
"""

import json
import math
import os
from dataclasses import asdict, is_dataclass
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from src.utils.logger_config import setup_logger

logger = setup_logger('reporting', 'reporting.log')

FLOAT_FORMAT = '.17g'


def to_jsonable(obj: Any) -> Any:
    """
    Convertit récursivement dataclasses, tableaux numpy et scalaires numpy
    en types JSON natifs. Les flottants non finis deviennent des chaînes.
    """
    if is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, 'to_dict'):
            return to_jsonable(obj.to_dict())
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return 'nan' if math.isnan(x) else ('inf' if x > 0 else '-inf')
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, 'to_dict'):
        return to_jsonable(obj.to_dict())
    return str(obj)


def _encode(value: Any, indent: int, level: int) -> str:
    pad = ' ' * (indent * (level + 1))
    end = ' ' * (indent * level)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, float):
        return format(value, FLOAT_FORMAT)
    if isinstance(value, dict):
        if not value:
            return '{}'
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_encode(value[k], indent, level + 1)}"
                 for k in sorted(value)]
        return '{\n' + ',\n'.join(items) + '\n' + end + '}'
    if isinstance(value, list):
        if not value:
            return '[]'
        if all(not isinstance(v, (dict, list)) for v in value):
            return '[' + ', '.join(_encode(v, indent, level + 1) for v in value) + ']'
        items = [pad + _encode(v, indent, level + 1) for v in value]
        return '[\n' + ',\n'.join(items) + '\n' + end + ']'
    raise TypeError(f"Type non sérialisable: {type(value)}")


def dumps_stable(obj: Any, indent: int = 2) -> str:
    """
    Sérialise en JSON avec clés triées et flottants au format '.17g'.

    Returns:
        str: Texte JSON terminé par un saut de ligne
    """
    return _encode(to_jsonable(obj), indent, 0) + '\n'


def write_json(obj: Any, path: str) -> str:
    """Écrit un rapport JSON stable et retourne son chemin."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(dumps_stable(obj))
    logger.info(f"Rapport JSON écrit: {path}")
    return path


NON_FINITE = {'inf': math.inf, '-inf': -math.inf, 'nan': math.nan}


def _decode(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode(v) for v in value]
    if isinstance(value, str) and value in NON_FINITE:
        return NON_FINITE[value]
    return value


def loads_stable(text: str) -> Any:
    """
    Relit un rapport écrit par dumps_stable. Les chaînes "inf", "-inf" et
    "nan" sont réservées aux flottants non finis et redeviennent des float.
    """
    return _decode(json.loads(text))


def read_json(path: str) -> Any:
    """Relit un rapport JSON stable."""
    with open(path, 'r', encoding='utf-8') as handle:
        return loads_stable(handle.read())


def write_csv(rows: List[Dict[str, Any]], path: str, columns: List[str] = None) -> str:
    """
    Écrit un tableau de balayage en CSV (ligne d'en-tête toujours présente).

    Args:
        rows: Lignes du tableau
        path: Fichier de sortie
        columns: Ordre des colonnes (optionnel)

    Returns:
        str: Chemin du fichier écrit
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    df = pd.DataFrame(rows, columns=columns)
    df.to_csv(path, index=False, float_format='%.17g', lineterminator='\n', encoding='utf-8')
    logger.info(f"Tableau CSV écrit: {path} ({len(df)} lignes)")
    return path
