from src.modulus.paths import path_length, rho_shortest_path
from src.modulus.modulus import (
    BRUTE_MAX_VERTICES,
    BRUTE_MAX_PATHS,
    ModulusOptions,
    ModulusResult,
    ComparabilityReport,
    p_modulus,
    enumerate_plate_paths,
    brute_modulus,
    check_mod_cap_comparability,
)

__all__ = [
    'path_length',
    'rho_shortest_path',
    'BRUTE_MAX_VERTICES',
    'BRUTE_MAX_PATHS',
    'ModulusOptions',
    'ModulusResult',
    'ComparabilityReport',
    'p_modulus',
    'enumerate_plate_paths',
    'brute_modulus',
    'check_mod_cap_comparability',
]
