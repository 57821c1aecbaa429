from src.harnack.sampling import SAMPLER_KINDS, BoundarySampler, trial_rng
from src.harnack.estimates import (
    DELTA_SHIFT,
    HarnackTrial,
    HarnackReport,
    MeanValueReport,
    GrowthReport,
    WeakHarnackReport,
    estimate_harnack,
    mean_value_ratio,
    check_mean_value,
    check_growth_lemma,
    check_weak_harnack,
)
from src.harnack.bmo import BmoReport, sample_balls, bmo_norm, check_log_bmo
from src.harnack.sobolev import SobolevCheckSpec, check_sobolev, check_caccioppoli
from src.harnack.poincare import PoincareReport, make_probes, neumann_constant, estimate_poincare

__all__ = [
    'SAMPLER_KINDS',
    'BoundarySampler',
    'trial_rng',
    'DELTA_SHIFT',
    'HarnackTrial',
    'HarnackReport',
    'MeanValueReport',
    'GrowthReport',
    'WeakHarnackReport',
    'estimate_harnack',
    'mean_value_ratio',
    'check_mean_value',
    'check_growth_lemma',
    'check_weak_harnack',
    'BmoReport',
    'sample_balls',
    'bmo_norm',
    'check_log_bmo',
    'SobolevCheckSpec',
    'check_sobolev',
    'check_caccioppoli',
    'PoincareReport',
    'make_probes',
    'neumann_constant',
    'estimate_poincare',
]
