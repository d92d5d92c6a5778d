"""Weighted and shifted Lubich difference (WSLD) operators on a uniform grid.

A single shifted operator approximates the left Riemann-Liouville derivative
to first order only (any nonzero shift), but weighted combinations of shifted
operators cancel the low-order error terms: two shifts restore second order,
two shift pairs third order, and two pair-of-pairs fourth order.  This module
builds the combined convolution coefficients ``phi_k``, their dense Toeplitz
matrix realizations on ``[x_L, x_R]`` (functions are zero-extended outside the
domain), and direct convolution application.

Matrices are returned unscaled: the ``h**-alpha`` factor is deferred to the
caller so one matrix serves any grid spacing (the diffusion solver applies
``tau / (2 h**alpha)`` jointly).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
import scipy.linalg as sla

from .coefficients import lubich_coeffs

__all__ = [
    "ShiftTuple",
    "DEFAULT_SHIFTS",
    "weights2",
    "weights3",
    "order3_error_constant",
    "weights4",
    "WsldScheme",
    "wsld_scheme",
    "OperatorMatrix",
    "assemble_left",
    "assemble_right",
    "apply_operator",
]


@dataclass(frozen=True)
class ShiftTuple:
    """The eight shifts of a fourth-order combination, ``(p,q,r,s,p̄,q̄,r̄,s̄)``."""

    p: int
    q: int
    r: int
    s: int
    p_bar: int
    q_bar: int
    r_bar: int
    s_bar: int

    def as_tuple(self) -> tuple[int, ...]:
        return (self.p, self.q, self.r, self.s,
                self.p_bar, self.q_bar, self.r_bar, self.s_bar)

    @property
    def m(self) -> int:
        """Stencil half-width: the largest absolute shift."""
        return max(abs(v) for v in self.as_tuple())

    @classmethod
    def parse(cls, text: str) -> "ShiftTuple":
        parts = [int(v) for v in text.replace(" ", "").split(",")]
        if len(parts) != 8:
            raise ValueError(f"expected 8 comma-separated shifts, got {len(parts)}")
        return cls(*parts)


#: The proven-stable shift tuple; every eigenvalue of the resulting operator
#: matrix has negative real part for alpha in (1, 2) (see wsld.spectral).
DEFAULT_SHIFTS = ShiftTuple(1, -1, 1, 2, 1, -1, 1, 3)


def weights2(p: int, q: int) -> tuple[float, float]:
    """Second-order weights ``(q/(q-p), p/(p-q))`` for the shift pair ``(p, q)``.

    They sum to one and cancel the O(h) error term of the shifted operators.
    """
    if p == q:
        raise ValueError("second-order weighting needs p != q")
    wp = Fraction(q, q - p)
    return float(wp), float(1 - wp)


def weights3(p: int, q: int, r: int, s: int) -> tuple[float, float]:
    """Third-order weights ``(rs/(rs-pq), pq/(pq-rs))`` for two shift pairs."""
    if p * q == r * s:
        raise ValueError("third-order weighting needs pq != rs")
    w = Fraction(r * s, r * s - p * q)
    return float(w), float(1 - w)


def order3_error_constant(nu: int, alpha: float, p: int, q: int, r: int, s: int) -> float:
    """Leading (third-order) error constant of the ``(p,q,r,s)`` combination.

    For nu=4 the constant is independent of alpha; for nu=3 it carries an
    alpha-proportional contribution from the generating polynomial itself.
    """
    if nu == 3:
        num = 2 * p * q * r * s * (r + s - p - q) + 3 * alpha * (p * q - r * s)
        return num / (12 * (r * s - p * q))
    if nu == 4:
        return (p * q * r * s * (r + s - p - q)) / (6 * (r * s - p * q))
    raise ValueError("weighted combinations are defined for nu in {3, 4}")


def weights4(nu: int, alpha: float, shifts: ShiftTuple) -> tuple[float, float]:
    """Fourth-order weights that cancel the two third-order error constants."""
    t = shifts.as_tuple()
    c = order3_error_constant(nu, alpha, *t[:4])
    c_bar = order3_error_constant(nu, alpha, *t[4:])
    if c == c_bar:
        raise ValueError("fourth-order weighting needs distinct error constants")
    w = c_bar / (c_bar - c)
    return w, 1.0 - w


ShiftsLike = Union[int, Sequence[int], ShiftTuple]

_ORDER_FOR_LEN = {1: 1, 2: 2, 4: 3, 8: 4}


@dataclass(frozen=True)
class WsldScheme:
    """A WSLD operator: order 1..4 with its active shifts.

    ``shifts`` holds 1, 2, 4 or 8 integers for orders 1..4 respectively.
    Construct through :func:`wsld_scheme`, which validates and warns on
    stability-unverified tuples.
    """

    nu: int
    alpha: float
    shifts: tuple[int, ...]
    order: int

    @property
    def m(self) -> int:
        """Stencil half-width max|shift|; rows reach m columns right of the diagonal."""
        return max(abs(v) for v in self.shifts)

    def shift_weights(self) -> list[tuple[float, int]]:
        """Flatten the weight hierarchy into ``(product weight, shift)`` pairs.

        The products telescope: weights at each level sum to one, so the
        returned weights also sum to one.
        """
        t = self.shifts
        if self.order == 1:
            return [(1.0, t[0])]
        if self.order == 2:
            wp, wq = weights2(*t)
            return [(wp, t[0]), (wq, t[1])]
        if self.order == 3:
            w_a, w_b = weights3(*t)
            out = []
            for w_pair, pair in ((w_a, t[:2]), (w_b, t[2:])):
                wp, wq = weights2(*pair)
                out += [(w_pair * wp, pair[0]), (w_pair * wq, pair[1])]
            return out
        st = ShiftTuple(*t)
        w4_a, w4_b = weights4(self.nu, self.alpha, st)
        out = []
        for w_quad, quad in ((w4_a, t[:4]), (w4_b, t[4:])):
            w_a, w_b = weights3(*quad)
            for w_pair, pair in ((w_a, quad[:2]), (w_b, quad[2:])):
                wp, wq = weights2(*pair)
                out += [(w_quad * w_pair * wp, pair[0]),
                        (w_quad * w_pair * wq, pair[1])]
        return out

    def weight_table(self) -> dict[str, float]:
        """Named weights of every level that participates at this order."""
        t = self.shifts
        table: dict[str, float] = {}
        if self.order >= 2:
            table["w_p"], table["w_q"] = weights2(t[0], t[1])
        if self.order >= 3:
            table["w_r"], table["w_s"] = weights2(t[2], t[3])
            table["w_pq"], table["w_rs"] = weights3(*t[:4])
        if self.order == 4:
            table["w_pbar"], table["w_qbar"] = weights2(t[4], t[5])
            table["w_rbar"], table["w_sbar"] = weights2(t[6], t[7])
            table["w_pbar_qbar"], table["w_rbar_sbar"] = weights3(*t[4:])
            table["w_pqrs"], table["w_bar"] = weights4(self.nu, self.alpha, ShiftTuple(*t))
        return table

    def phi(self, kmax: int) -> np.ndarray:
        """Combined convolution coefficients ``phi_0..phi_kmax``.

        ``phi_k = sum_j w_j l_{k + shift_j - m}`` with ``l`` at negative index
        treated as zero.
        """
        coeffs = lubich_coeffs(self.nu, self.alpha, kmax)
        m = self.m
        k = np.arange(kmax + 1)
        phi = np.zeros(kmax + 1)
        for w, sh in self.shift_weights():
            idx = k + sh - m
            valid = idx >= 0
            phi[valid] += w * coeffs[idx[valid]]
        return phi


def wsld_scheme(
    nu: int,
    alpha: float,
    shifts: ShiftsLike | None = None,
    order: int | None = None,
) -> WsldScheme:
    """Build a :class:`WsldScheme`, inferring the order from the shift count.

    With no ``shifts`` the proven-stable default tuple is used at order 4.
    Any other fourth-order tuple is accepted but triggers an "unverified
    stability" warning: negative definiteness has only been established for
    the default tuple.
    """
    if shifts is None:
        shifts = DEFAULT_SHIFTS
    if isinstance(shifts, ShiftTuple):
        flat = shifts.as_tuple()
    elif isinstance(shifts, int):
        flat = (shifts,)
    else:
        flat = tuple(int(v) for v in shifts)
    if len(flat) not in _ORDER_FOR_LEN:
        raise ValueError("shifts must contain 1, 2, 4 or 8 integers")
    inferred = _ORDER_FOR_LEN[len(flat)]
    if order is None:
        order = inferred
    elif order != inferred:
        raise ValueError(f"{len(flat)} shifts imply order {inferred}, not {order}")
    if order >= 2 and nu not in (3, 4):
        raise ValueError("weighted combinations are defined for nu in {3, 4}")
    if order == 1 and nu not in (1, 2, 3, 4, 5):
        raise ValueError("nu must be in 1..5")
    scheme = WsldScheme(nu=nu, alpha=alpha, shifts=flat, order=order)
    scheme.shift_weights()  # validates pairwise shift constraints
    if order == 4 and flat != DEFAULT_SHIFTS.as_tuple():
        warnings.warn(
            "shift tuple differs from the proven-stable default; "
            "stability is unverified",
            stacklevel=2,
        )
    return scheme


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense realization of a WSLD operator on ``N_x + 1`` grid nodes.

    ``scaled`` records whether ``h**-alpha`` has been applied; assembly leaves
    it deferred (False) so the matrix is reusable across grids of any spacing.
    """

    values: np.ndarray
    side: str  # "left" | "right"
    scaled: bool = False

    @property
    def n(self) -> int:
        return self.values.shape[0] - 1


def _toeplitz_from_phi(phi: np.ndarray, m: int, n: int) -> np.ndarray:
    # entry (i, j) = phi[i - j + m], zero when the index is negative
    col = phi[m : m + n + 1]
    row = np.zeros(n + 1)
    row[: m + 1] = phi[m::-1]
    return sla.toeplitz(col, row)


def assemble_left(scheme: WsldScheme, n: int) -> OperatorMatrix:
    """Dense left-derivative matrix on ``n + 1`` nodes (``h**-alpha`` deferred).

    Row ``i``, column ``j`` holds ``phi_{i-j+m}``; depends on ``i - j`` only,
    so the matrix is Toeplitz.  Raises when the grid cannot contain the
    stencil (``n < max(2, m)``).
    """
    m = scheme.m
    if n < max(2, m):
        raise ValueError(f"grid too small: need n >= {max(2, m)}, got {n}")
    phi = scheme.phi(n + m)
    return OperatorMatrix(values=_toeplitz_from_phi(phi, m, n), side="left")


def assemble_right(scheme: WsldScheme, n: int) -> OperatorMatrix:
    """Dense right-derivative matrix: the transpose of :func:`assemble_left`."""
    left = assemble_left(scheme, n)
    return OperatorMatrix(values=left.values.T.copy(), side="right")


def apply_operator(
    u: np.ndarray, scheme: WsldScheme, h: float, side: str = "left"
) -> np.ndarray:
    """Apply the scaled operator to grid samples by direct convolution.

    Implements ``h**-alpha * sum_{k} phi_k u_{i-k+m}`` (left; mirrored for
    right) with indices outside ``0..n`` contributing nothing -- the zero
    extension.  Matches the matrix product of :func:`assemble_left` /
    :func:`assemble_right` to round-off.
    """
    u = np.asarray(u, dtype=float)
    if u.ndim != 1 or u.size < 2:
        raise ValueError("u must be a 1-D array of at least two node values")
    n = u.size - 1
    m = scheme.m
    if n < max(2, m):
        raise ValueError(f"grid too small: need n >= {max(2, m)}, got {n}")
    if side == "right":
        return apply_operator(u[::-1], scheme, h, side="left")[::-1]
    if side != "left":
        raise ValueError("side must be 'left' or 'right'")
    phi = scheme.phi(n + m)
    full = np.convolve(phi, u)
    return h ** (-scheme.alpha) * full[m : m + n + 1]
