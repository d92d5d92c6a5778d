"""Steady and time-dependent fractional-diffusion solves with WSLD operators.

Two problem families:

* a steady one-sided problem ``D^alpha u = f`` on ``(0, 1)`` solved through
  the unshifted operator matrix (lower triangular, forward substitution);
* the variable-coefficient space-fractional diffusion equation

      u_t = d_plus(x) * D_left^alpha u + d_minus(x) * D_right^alpha u + f(x, t)

  on ``(x_L, x_R)`` with Dirichlet boundaries, advanced by Crank-Nicolson:

      [I - tau/(2 h^alpha) (D+ A + D- A^T)] U^{n+1}
          = [I + tau/(2 h^alpha) (D+ A + D- A^T)] U^n + tau F^{n+1/2}.

The system matrix is time independent, so it is LU-factored once and reused
across all steps.  With the proven-stable shift tuple the spatial operator is
negative definite and the stepping is unconditionally stable; with a plain
unshifted operator it visibly blows up (see :func:`stability_probe`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg as sla

from .operators import WsldScheme, assemble_left, wsld_scheme

__all__ = [
    "Grid1D",
    "DiffusionProblem",
    "solve_steady",
    "CnSystem",
    "assemble_cn_system",
    "SolveResult",
    "cn_solve",
    "ProbeResult",
    "stability_probe",
    "table1_source",
    "table1_exact",
    "table2_problem",
    "table2_exact",
    "expression",
    "EXPRESSION_IDS",
]

#: Sup-norm threshold beyond which a time-stepping run is declared blown up.
BLOWUP_THRESHOLD = 1e10


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid ``x_i = x_left + i h`` with ``h = (x_right - x_left)/nx``."""

    x_left: float
    x_right: float
    nx: int

    def __post_init__(self) -> None:
        if not self.x_left < self.x_right:
            raise ValueError("need x_left < x_right")
        if self.nx < 2:
            raise ValueError("need nx >= 2")

    @property
    def h(self) -> float:
        return (self.x_right - self.x_left) / self.nx

    def nodes(self) -> np.ndarray:
        return np.linspace(self.x_left, self.x_right, self.nx + 1)


def _zero_bc(_t: float) -> float:
    return 0.0


@dataclass
class DiffusionProblem:
    """Data of one diffusion run: coefficients, forcing, initial/boundary data.

    ``kappa`` optionally records the constant ratio ``d_minus = kappa*d_plus``
    assumed by the unconditional-stability result; when given, the sampled
    coefficients are checked against it exactly.
    """

    alpha: float
    grid: Grid1D
    d_plus: Callable[[np.ndarray], np.ndarray]
    d_minus: Callable[[np.ndarray], np.ndarray]
    source: Callable[[np.ndarray, float], np.ndarray]
    initial: Callable[[np.ndarray], np.ndarray]
    horizon: float
    nt: int
    bc_left: Callable[[float], float] = field(default=_zero_bc)
    bc_right: Callable[[float], float] = field(default=_zero_bc)
    kappa: float | None = None

    def __post_init__(self) -> None:
        if not 1.0 < self.alpha < 2.0:
            raise ValueError("diffusion problems need alpha in (1, 2)")
        if self.nt < 1:
            raise ValueError("need nt >= 1")
        if self.horizon <= 0:
            raise ValueError("need horizon > 0")
        x = self.grid.nodes()
        dp = np.asarray(self.d_plus(x), dtype=float)
        dm = np.asarray(self.d_minus(x), dtype=float)
        if np.any(dp < 0) or np.any(dm < 0):
            raise ValueError("diffusion coefficients must be nonnegative")
        if self.kappa is not None and not np.array_equal(dm, self.kappa * dp):
            raise ValueError("d_minus must equal kappa * d_plus exactly")

    @property
    def tau(self) -> float:
        return self.horizon / self.nt


def solve_steady(
    nu: int,
    p: int,
    alpha: float,
    f: Callable[[np.ndarray], np.ndarray] | np.ndarray,
    grid: Grid1D,
    bc: tuple[float, float] | None = None,
) -> np.ndarray:
    """Solve ``h^-alpha A_p u = f`` on the grid nodes.

    For the unshifted operator the matrix is lower triangular and the system
    is solved by forward substitution (one refinement sweep keeps the
    residual near round-off).  For ``alpha in (1, 2)`` the problem carries a
    second boundary value; the last equation is replaced by the constraint
    ``u(x_right) = bc[1]``, which leaves the triangular sweep untouched
    because no earlier equation involves the last unknown.

    Integral orders (``alpha < 0``) and ``alpha in (0, 1)`` need no
    constraint: the first equation already pins ``u(x_left)`` whenever
    ``f(x_left) = 0``.
    """
    scheme = wsld_scheme(nu, alpha, shifts=p)
    matrix = assemble_left(scheme, grid.nx).values
    x = grid.nodes()
    rhs = np.asarray(f(x) if callable(f) else f, dtype=float)
    if rhs.shape != x.shape:
        raise ValueError("f samples must match the grid nodes")
    g = grid.h ** alpha * rhs
    if 1.0 < alpha < 2.0:
        # the two-sided boundary data leave one value the one-sided operator
        # cannot see; replace the last equation with the constraint
        if bc is None:
            raise ValueError("alpha in (1, 2) needs boundary values bc=(left, right)")
        matrix = matrix.copy()
        matrix[-1, :] = 0.0
        matrix[-1, -1] = 1.0
        g[-1] = bc[1]
    if p == 0:
        u = sla.solve_triangular(matrix, g, lower=True)
        u += sla.solve_triangular(matrix, g - matrix @ u, lower=True)
    else:
        lu = sla.lu_factor(matrix)
        u = sla.lu_solve(lu, g)
        u += sla.lu_solve(lu, g - matrix @ u)
    return u


@dataclass
class CnSystem:
    """Assembled Crank-Nicolson matrices with the reusable LU factorization."""

    m_lhs: np.ndarray
    m_rhs: np.ndarray
    lu: tuple
    scheme: WsldScheme
    problem: DiffusionProblem

    def refactor(self) -> None:
        """Recompute the factorization (identical bitwise; matrix is frozen)."""
        self.lu = sla.lu_factor(self.m_lhs)


def assemble_cn_system(problem: DiffusionProblem, scheme: WsldScheme) -> CnSystem:
    """Build both stepping matrices and factor the implicit one.

    Dirichlet rows (first and last) are overwritten with identity rows in both
    matrices; the prescribed values enter the right-hand side each step.
    Raises on a numerically singular implicit matrix, which cannot occur when
    the spatial operator part is negative definite.
    """
    grid = problem.grid
    x = grid.nodes()
    a = assemble_left(scheme, grid.nx).values
    dp = np.asarray(problem.d_plus(x), dtype=float)
    dm = np.asarray(problem.d_minus(x), dtype=float)
    spatial = dp[:, None] * a + dm[:, None] * a.T
    c = problem.tau / (2.0 * grid.h ** problem.alpha)
    eye = np.eye(grid.nx + 1)
    m_lhs = eye - c * spatial
    m_rhs = eye + c * spatial
    for m in (m_lhs, m_rhs):
        m[0, :] = 0.0
        m[0, 0] = 1.0
        m[-1, :] = 0.0
        m[-1, -1] = 1.0
    lu, piv = sla.lu_factor(m_lhs)
    if not np.all(np.isfinite(lu)) or np.any(np.diag(lu) == 0.0):
        raise np.linalg.LinAlgError("implicit Crank-Nicolson matrix is singular")
    return CnSystem(m_lhs=m_lhs, m_rhs=m_rhs, lu=(lu, piv), scheme=scheme,
                    problem=problem)


@dataclass(frozen=True)
class SolveResult:
    """Final state of a time-stepping run."""

    u: np.ndarray
    t: float
    steps: int
    sup_norm: float
    max_error: float | None = None


def cn_solve(
    problem: DiffusionProblem,
    scheme: WsldScheme | None = None,
    exact: Callable[[np.ndarray, float], np.ndarray] | None = None,
    refactor_each_step: bool = False,
) -> SolveResult:
    """Advance the Crank-Nicolson scheme to ``t = horizon``.

    The forcing is sampled at the half step ``t_{n+1/2}``.  A sup norm beyond
    ``BLOWUP_THRESHOLD`` aborts with ``RuntimeError("instability detected")``.
    ``refactor_each_step`` exists only to demonstrate that refactoring is
    pointless: the matrix never changes, so results are identical bitwise.
    """
    if scheme is None:
        scheme = wsld_scheme(4, problem.alpha)
    system = assemble_cn_system(problem, scheme)
    grid = problem.grid
    x = grid.nodes()
    tau = problem.tau
    u = np.asarray(problem.initial(x), dtype=float)
    sup = float(np.abs(u).max())
    for n in range(problem.nt):
        if refactor_each_step:
            system.refactor()
        t_half = (n + 0.5) * tau
        rhs = system.m_rhs @ u + tau * problem.source(x, t_half)
        t_next = (n + 1) * tau
        rhs[0] = problem.bc_left(t_next)
        rhs[-1] = problem.bc_right(t_next)
        u = sla.lu_solve(system.lu, rhs)
        if not np.all(np.isfinite(u)):
            raise RuntimeError("instability detected")
        sup = max(sup, float(np.abs(u).max()))
        if sup > BLOWUP_THRESHOLD:
            raise RuntimeError("instability detected")
    err = None
    if exact is not None:
        err = float(np.abs(u - exact(x, problem.horizon)).max())
    return SolveResult(u=u, t=problem.horizon, steps=problem.nt, sup_norm=sup,
                       max_error=err)


@dataclass(frozen=True)
class ProbeResult:
    """Outcome of an aggressive-step stability probe (blow-up is data, not error)."""

    bounded: bool
    sup_norm: float
    steps_completed: int


def stability_probe(
    problem: DiffusionProblem,
    scheme: WsldScheme,
    tau_over_h: float,
    n_steps: int = 400,
) -> ProbeResult:
    """Run ``n_steps`` with the aggressive step ``tau = tau_over_h * h``.

    Reports the running sup norm; crossing ``BLOWUP_THRESHOLD`` stops the run
    and marks it unbounded.  With the negative-definite default tuple the sup
    norm stays of the order of the solution scale for any ratio; the
    unshifted operator diverges within tens of steps.
    """
    grid = problem.grid
    tau = tau_over_h * grid.h
    horizon = tau * n_steps
    probe_problem = DiffusionProblem(
        alpha=problem.alpha, grid=grid, d_plus=problem.d_plus,
        d_minus=problem.d_minus, source=problem.source,
        initial=problem.initial, horizon=horizon, nt=n_steps,
        bc_left=problem.bc_left, bc_right=problem.bc_right,
        kappa=problem.kappa,
    )
    try:
        result = cn_solve(probe_problem, scheme)
    except RuntimeError:
        return ProbeResult(bounded=False, sup_norm=float("inf"),
                           steps_completed=0)
    return ProbeResult(bounded=result.sup_norm <= BLOWUP_THRESHOLD,
                       sup_norm=result.sup_norm, steps_completed=result.steps)


# ---------------------------------------------------------------------------
# Built-in benchmark problems
# ---------------------------------------------------------------------------

def table1_source(alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    """Right-hand side whose exact solution on (0, 1) is ``x**8``."""
    scale = math.gamma(9.0) / math.gamma(9.0 - alpha)
    return lambda x: scale * np.asarray(x, dtype=float) ** (8.0 - alpha)


def table1_exact(x: np.ndarray) -> np.ndarray:
    return np.asarray(x, dtype=float) ** 8


def table2_exact(x: np.ndarray, t: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return math.sin(t + 1.0) * x ** 4 * (2.0 - x) ** 4


def _table2_source(alpha: float) -> Callable[[np.ndarray, float], np.ndarray]:
    g = math.gamma
    c = [g(9) / g(9 - alpha), 8 * g(8) / g(8 - alpha), 24 * g(7) / g(7 - alpha),
         32 * g(6) / g(6 - alpha), 16 * g(5) / g(5 - alpha)]

    def f(x: np.ndarray, t: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = 2.0 - x
        bracket = (
            c[0] * (x ** (8 - alpha) + 2 * y ** (8 - alpha))
            - c[1] * (x ** (7 - alpha) + 2 * y ** (7 - alpha))
            + c[2] * (x ** (6 - alpha) + 2 * y ** (6 - alpha))
            - c[3] * (x ** (5 - alpha) + 2 * y ** (5 - alpha))
            + c[4] * (x ** (4 - alpha) + 2 * y ** (4 - alpha))
        )
        return math.cos(t + 1.0) * x ** 4 * y ** 4 - x ** alpha * math.sin(t + 1.0) * bracket

    return f


def table2_problem(alpha: float, nx: int, nt: int | None = None) -> DiffusionProblem:
    """The diffusion benchmark on (0, 2): ``d+ = x^alpha``, ``d- = 2 x^alpha``.

    Exact solution ``sin(t+1) x^4 (2-x)^4``, horizon ``T = 1``; the default
    time step follows the ``tau = h^2`` rule.  The coefficient ratio is the
    constant ``kappa = 2`` demanded by the unconditional-stability result.
    """
    grid = Grid1D(0.0, 2.0, nx)
    if nt is None:
        nt = round(1.0 / grid.h ** 2)
    return DiffusionProblem(
        alpha=alpha,
        grid=grid,
        d_plus=lambda x: np.asarray(x, dtype=float) ** alpha,
        d_minus=lambda x: 2.0 * np.asarray(x, dtype=float) ** alpha,
        source=_table2_source(alpha),
        initial=lambda x: table2_exact(x, 0.0),
        horizon=1.0,
        nt=nt,
        kappa=2.0,
    )


# Expression ids accepted by the JSON problem config (see wsld.cli).
_EXPRESSIONS: dict[str, Callable[[float], Callable]] = {
    "x^alpha": lambda alpha: (lambda x: np.asarray(x, dtype=float) ** alpha),
    "2x^alpha": lambda alpha: (lambda x: 2.0 * np.asarray(x, dtype=float) ** alpha),
    "zero": lambda alpha: (lambda x: np.zeros_like(np.asarray(x, dtype=float))),
    "one": lambda alpha: (lambda x: np.ones_like(np.asarray(x, dtype=float))),
    "x^8": lambda alpha: table1_exact,
    "table1_source": table1_source,
    "table2_forcing": _table2_source,
    "table2_initial": lambda alpha: (lambda x: table2_exact(x, 0.0)),
    "zero_source": lambda alpha: (lambda x, t: np.zeros_like(np.asarray(x, dtype=float))),
}

EXPRESSION_IDS = tuple(sorted(_EXPRESSIONS))


def expression(name: str, alpha: float) -> Callable:
    """Resolve a built-in expression id to a callable for the given alpha."""
    try:
        factory = _EXPRESSIONS[name]
    except KeyError:
        raise KeyError(
            f"unknown expression id {name!r}; available: {', '.join(EXPRESSION_IDS)}"
        ) from None
    return factory(alpha)
