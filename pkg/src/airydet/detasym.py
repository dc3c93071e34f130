"""Log-determinants and the large-alpha constants of det(I + A_alpha(f)).

    log det(I + A_alpha(f)) = c1 alpha^(3/2) + c2 + o(1),

    c1 = (1/pi) * int_0^inf sqrt(x) log(1 + f(-x)) dx,
    c2 = (1/2)  * int_0^inf x G(x)^2 dx,
    G(x) = (1/2pi) * int exp(i x y) log(1 + f(-y^2)) dy.

c2 is cross-checked against the Wiener-Hopf trace
tr[log(I + W(g)) - W(log(1 + g))] with g(x) = f(-x^2); numerically that
trace equals twice c2 (it is the full integral of x G(x)^2), which is
what ``wiener_hopf_c2_check`` accounts for.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import fourier
from .operator_disc import (
    DiscretizedOperator,
    build_grid,
    default_airy_grid,
    discretize_airy_operator,
    discretize_wiener_hopf,
)
from .symbols import SymbolFunction, half_line_symbol

PIVOT_FLOOR = 1e-13
G_X_MAX = 60.0
G_POINTS = 1024
WH_HALF_LENGTH = 40.0
TRACE_TO_C2 = 0.5


class SingularOperatorError(ArithmeticError):
    """I + M has a pivot below ``PIVOT_FLOOR``: -1 is (numerically) in the spectrum."""


@dataclass(frozen=True)
class AsymptoticConstants:
    c1: float
    c2: float
    variance: float
    quad_error_est: float


@dataclass(frozen=True)
class GFunction:
    grid: np.ndarray
    values: np.ndarray
    x_max: float
    imag_residual: float
    y_max: float


def _lu_pivots(matrix: np.ndarray) -> tuple[np.ndarray, int]:
    a = np.eye(matrix.shape[0], dtype=matrix.dtype) + matrix
    with warnings.catch_warnings():
        # an exactly singular factor is reported below as SingularOperatorError
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    diag = np.diag(lu)
    if diag.size and np.min(np.abs(diag)) < PIVOT_FLOOR:
        raise SingularOperatorError(f"LU pivot {np.min(np.abs(diag)):.3e} below {PIVOT_FLOOR:g}")
    swaps = int(np.count_nonzero(piv != np.arange(piv.size)))
    return diag, swaps


def slogdet(matrix: np.ndarray) -> tuple[float, float]:
    """(sign, log|det(I + matrix)|) for a real matrix, via LU with partial pivoting."""
    diag, swaps = _lu_pivots(np.asarray(matrix, dtype=np.float64))
    sign = (-1.0) ** swaps * float(np.prod(np.sign(diag)))
    return sign, float(np.sum(np.log(np.abs(diag))))


def log_det(op: DiscretizedOperator | np.ndarray) -> float:
    """log det(I + M).

    Raises :class:`SingularOperatorError` on a vanishing pivot and
    ``ArithmeticError`` if the determinant comes out negative, which for
    an admissible symbol means the discretization has failed.
    """
    matrix = op.matrix if isinstance(op, DiscretizedOperator) else np.asarray(op)
    if matrix.size == 0 or not np.any(matrix):
        return 0.0
    if np.iscomplexobj(matrix):
        return complex_log_det(matrix).real
    sign, value = slogdet(matrix)
    if sign < 0:
        raise ArithmeticError("det(I + M) is negative; the operator has an eigenvalue below -1")
    return value


def complex_log_det(matrix: np.ndarray) -> complex:
    """Sum of complex logs of the LU pivots of I + matrix (a continuous branch of log det)."""
    diag, swaps = _lu_pivots(np.asarray(matrix, dtype=np.complex128))
    return complex(np.sum(np.log(diag)) + (1j * math.pi if swaps % 2 else 0.0))


def _sqrt_moment(f: SymbolFunction, transform, per_panel: int = 16, panel: float = 0.5) -> float:
    """(1/pi) * int_0^inf sqrt(x) T(f(-x)) dx via x = u^2."""
    u_max = math.sqrt(f.decay_scale) + 1.0
    grid = build_grid((0.0, u_max), per_panel * math.ceil(u_max / panel), "composite_gl", panel)
    u = grid.nodes
    vals = f(-u * u)
    if transform is not None:
        vals = transform(vals)
    return float(np.sum(grid.weights * 2.0 * u * u * vals) / math.pi)


def _log1p_checked(v):
    if np.iscomplexobj(v):
        return np.log1p(v)
    if np.min(1.0 + v) <= 0:
        raise ValueError("1 + f(-x) must be positive on the negative half-line")
    return np.log1p(v)


def compute_c1(f: SymbolFunction, return_error: bool = False):
    """Coefficient of alpha^(3/2).  With ``return_error`` also returns |coarse - fine|."""
    if not f.admissible:
        raise ValueError(f"symbol {f.label()} is not admissible")
    fine = _sqrt_moment(f, _log1p_checked, 32)
    if not return_error:
        return fine
    coarse = _sqrt_moment(f, _log1p_checked, 16)
    return fine, abs(fine - coarse)


def edge_mean(f: SymbolFunction, alpha: float) -> float:
    """Limiting mean of the edge linear statistic: alpha^(3/2)/pi * int sqrt(x) f(-x) dx."""
    return alpha**1.5 * _sqrt_moment(f, None, 32)


def compute_g_function(f: SymbolFunction, x_max: float = G_X_MAX, n: int = G_POINTS,
                       transform=_log1p_checked) -> GFunction:
    """G on the uniform grid x_k = k x_max / (n - 1), k < n.

    ``transform`` defaults to log1p; pass ``None`` for the plain transform
    of g(y) = f(-y^2) used by the variance.
    """
    if n < 512 or n & (n - 1):
        raise ValueError("n must be a power of two >= 512")
    phi, y_max = half_line_symbol(f, transform)
    fourier.check_window(phi, y_max)
    x = np.linspace(0.0, x_max, n)
    vals = fourier.full_line_transform(phi, x, y_max)
    return GFunction(x, vals.real.copy(), float(x_max), float(np.max(np.abs(vals.imag))), y_max)


def _x_g_squared(f: SymbolFunction, transform, x_max: float, per_panel: int) -> float:
    phi, y_max = half_line_symbol(f, transform)
    fourier.check_window(phi, y_max)
    grid = build_grid((0.0, x_max), per_panel * math.ceil(x_max / 2.0), "composite_gl")
    h = fourier.trapezoid_step(y_max, 2.0 * x_max)
    g = fourier.even_inverse_transform(phi, grid.nodes, y_max, h)
    tail = abs(float(fourier.even_inverse_transform(phi, np.array([x_max]), y_max, h)[0]))
    if tail > 1e-12:
        raise ValueError(f"G not negligible at x_max={x_max:g} ({tail:.2e})")
    return float(np.sum(grid.weights * grid.nodes * g * g))


def compute_c2(f: SymbolFunction, return_error: bool = False, x_max: float = G_X_MAX):
    """Constant term: (1/2) * int_0^x_max x G(x)^2 dx."""
    if not f.admissible:
        raise ValueError(f"symbol {f.label()} is not admissible")
    if f.is_zero:
        return (0.0, 0.0) if return_error else 0.0
    value = 0.5 * _x_g_squared(f, _log1p_checked, x_max, 16)
    if not return_error:
        return value
    fine = 0.5 * _x_g_squared(f, _log1p_checked, 2.0 * x_max, 32)
    return value, abs(fine - value)


def edge_variance(f: SymbolFunction, x_max: float = G_X_MAX) -> float:
    """Limiting variance of the edge statistic: int_0^inf x Gg(x)^2 dx with Gg the transform of f(-y^2)."""
    if f.is_zero:
        return 0.0
    return _x_g_squared(f, None, x_max, 16)


def wiener_hopf_trace(f: SymbolFunction, half_length: float = WH_HALF_LENGTH) -> float:
    """tr[log(I + W(g)) - W(log(1 + g))] on [0, half_length], g(x) = f(-x^2)."""
    g, y_max = half_line_symbol(f)
    probe = g(np.linspace(0.0, y_max, 2001))
    if np.max(np.abs(probe)) >= 1.0:
        raise ValueError("need sup|g| < 1 for the Wiener-Hopf trace")
    if not np.any(probe):
        return 0.0
    op = discretize_wiener_hopf(g, y_max, half_length)
    lam = scipy.linalg.eigvalsh(op.matrix)
    if lam[0] <= -1.0 + 1e-10:
        raise SingularOperatorError(f"W(g) has eigenvalue {lam[0]:.6g} <= -1")
    logg, _ = half_line_symbol(f, np.log1p)
    k0 = float(fourier.even_inverse_transform(logg, np.array([0.0]), y_max)[0])
    return float(np.sum(np.log1p(lam)) - np.sum(op.grid.weights) * k0)


def wiener_hopf_c2_check(f: SymbolFunction, half_length: float = WH_HALF_LENGTH,
                         return_error: bool = False):
    """c2 from the Wiener-Hopf operator: half the trace, Richardson-extrapolated in the length."""
    t1 = wiener_hopf_trace(f, half_length)
    t2 = wiener_hopf_trace(f, 2.0 * half_length)
    extrap = 2.0 * t2 - t1
    value = TRACE_TO_C2 * extrap
    if return_error:
        return value, TRACE_TO_C2 * abs(t2 - t1)
    return value


def predicted_log_det(f: SymbolFunction, alpha: float) -> float:
    return compute_c1(f) * alpha**1.5 + compute_c2(f)


def airy_log_det(f: SymbolFunction, alpha: float, nodes_per_panel: int = 16, window_scale: float = 1.0) -> float:
    """log det(I + A_alpha(f)) on the default truncation grid."""
    grid = default_airy_grid(f, alpha, nodes_per_panel, window_scale)
    return log_det(discretize_airy_operator(f, alpha, grid))


def asymptotic_constants(f: SymbolFunction) -> AsymptoticConstants:
    c1, e1 = compute_c1(f, return_error=True)
    c2, e2 = compute_c2(f, return_error=True)
    return AsymptoticConstants(c1, c2, edge_variance(f), max(e1, e2))
