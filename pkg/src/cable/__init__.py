from src.cable.cables import (
    SeamScaling,
    CableSystem,
    CableFn,
    SeamReport,
    build_cable_system,
    interpolate,
    cable_energy,
    cable_ball_measure,
    content_bounds,
    check_rsvr_seam,
)

__all__ = [
    'SeamScaling',
    'CableSystem',
    'CableFn',
    'SeamReport',
    'build_cable_system',
    'interpolate',
    'cable_energy',
    'cable_ball_measure',
    'content_bounds',
    'check_rsvr_seam',
]
