from src.capacity.condenser import (
    CondenserSpec,
    CapacityResult,
    EquilibriumReport,
    capacity,
    check_equilibrium_identities,
)
from src.capacity.sweep import (
    SweepRow,
    ScalingSweepResult,
    CapacityBoundsReport,
    NestedAnnuliReport,
    capacity_scaling_sweep,
    check_capacity_bounds,
    nested_annuli_bound,
)
from src.capacity.wolff import (
    WolffTerm,
    WolffResult,
    WolffBoundsReport,
    WolffInfReport,
    AnnulusCapacities,
    dyadic_depth,
    wolff_potential,
    verify_wolff_bounds,
    check_wolff_inf_bound,
)
from src.capacity.cutoff import (
    CutoffResult,
    CutoffSobolevFit,
    build_cutoff,
    energy_measure,
    check_cutoff_sobolev,
)

__all__ = [
    'CondenserSpec',
    'CapacityResult',
    'EquilibriumReport',
    'capacity',
    'check_equilibrium_identities',
    'SweepRow',
    'ScalingSweepResult',
    'CapacityBoundsReport',
    'NestedAnnuliReport',
    'capacity_scaling_sweep',
    'check_capacity_bounds',
    'nested_annuli_bound',
    'WolffTerm',
    'WolffResult',
    'WolffBoundsReport',
    'WolffInfReport',
    'AnnulusCapacities',
    'dyadic_depth',
    'wolff_potential',
    'verify_wolff_bounds',
    'check_wolff_inf_bound',
    'CutoffResult',
    'CutoffSobolevFit',
    'build_cutoff',
    'energy_measure',
    'check_cutoff_sobolev',
]
