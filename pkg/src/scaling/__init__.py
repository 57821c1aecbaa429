from src.scaling.power_laws import (
    PowerScaling,
    RegimeReport,
    IterationResult,
    LogLogFit,
    eval_scaling,
    regime,
    iterate_bound,
    loglog_fit,
)

__all__ = [
    'PowerScaling',
    'RegimeReport',
    'IterationResult',
    'LogLogFit',
    'eval_scaling',
    'regime',
    'iterate_bound',
    'loglog_fit',
]
