"""Weighted and shifted Lubich difference (WSLD) operators.

High-order (up to fourth) finite-difference approximations of left and right
Riemann-Liouville fractional derivatives, built by weighting shifted Lubich
convolution operators so the low-order error terms cancel, together with

* spectral diagnostics (symbol order checks, Toeplitz generating functions,
  negative-definiteness certificates),
* a Crank-Nicolson solver for 1-D variable-coefficient space-fractional
  diffusion,
* a convergence benchmark harness with frozen reference tables.

See ``demos/`` for narrative walkthroughs and ``wsld --help`` for the CLI.
"""

from .coefficients import (
    RootFactorization,
    generating_polynomial,
    grunwald_coeffs,
    lubich_coeffs,
    lubich_coeffs_oracle,
    residual_polynomial,
    root_factorization,
)
from .operators import (
    DEFAULT_SHIFTS,
    OperatorMatrix,
    ShiftTuple,
    WsldScheme,
    apply_operator,
    assemble_left,
    assemble_right,
    weights2,
    weights3,
    weights4,
    wsld_scheme,
)
from .spectral import (
    EigenProbe,
    ScanReport,
    definiteness_scan,
    eigen_probe,
    gen_fn_combined,
    gen_fn_pair,
    symbol,
    symbol_deviation,
    symbol_order_slope,
)
from .solver import (
    DiffusionProblem,
    Grid1D,
    ProbeResult,
    SolveResult,
    assemble_cn_system,
    cn_solve,
    solve_steady,
    stability_probe,
    table1_exact,
    table1_source,
    table2_exact,
    table2_problem,
)
from .benchmarks import (
    ConvergenceReport,
    order_regression,
    run_consistency,
    run_table1,
    run_table2,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # coefficients
    "generating_polynomial",
    "residual_polynomial",
    "grunwald_coeffs",
    "lubich_coeffs",
    "lubich_coeffs_oracle",
    "RootFactorization",
    "root_factorization",
    # operators
    "ShiftTuple",
    "DEFAULT_SHIFTS",
    "weights2",
    "weights3",
    "weights4",
    "WsldScheme",
    "wsld_scheme",
    "OperatorMatrix",
    "assemble_left",
    "assemble_right",
    "apply_operator",
    # spectral
    "symbol",
    "symbol_deviation",
    "symbol_order_slope",
    "gen_fn_pair",
    "gen_fn_combined",
    "ScanReport",
    "definiteness_scan",
    "EigenProbe",
    "eigen_probe",
    # solver
    "Grid1D",
    "DiffusionProblem",
    "solve_steady",
    "assemble_cn_system",
    "cn_solve",
    "SolveResult",
    "ProbeResult",
    "stability_probe",
    "table1_source",
    "table1_exact",
    "table2_problem",
    "table2_exact",
    # benchmarks
    "ConvergenceReport",
    "order_regression",
    "run_table1",
    "run_table2",
    "run_consistency",
]
