from src.penergy.energy import energy, p_laplacian, riesz_measure, edge_mask, signed_power
from src.penergy.solver import (
    SolverOptions,
    Solution,
    DirichletProblem,
    VariationalProblem,
    solve_variational,
    solve_dirichlet,
    solve_poisson,
)
from src.penergy.principles import (
    PRINCIPLE_TOL,
    ComparisonResult,
    PoissonLambdaReport,
    classify,
    is_superharmonic,
    is_subharmonic,
    check_comparison,
    check_maximum_principle,
    check_pasting,
    poisson_modification,
    check_poisson_lambda,
)

__all__ = [
    'energy',
    'p_laplacian',
    'riesz_measure',
    'edge_mask',
    'signed_power',
    'SolverOptions',
    'Solution',
    'DirichletProblem',
    'VariationalProblem',
    'solve_variational',
    'solve_dirichlet',
    'solve_poisson',
    'PRINCIPLE_TOL',
    'ComparisonResult',
    'PoissonLambdaReport',
    'classify',
    'is_superharmonic',
    'is_subharmonic',
    'check_comparison',
    'check_maximum_principle',
    'check_pasting',
    'poisson_modification',
    'check_poisson_lambda',
]
