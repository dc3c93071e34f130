"""Airy kernel, finite-N Hermite kernel and its edge rescaling."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._backend import impl
from .special_fn import airy_pair, hermite_wavefunctions

DIAGONAL_DELTA = 1e-6
CD_SWITCH = 64


class Regime(enum.Enum):
    OFF_DIAGONAL = "off_diagonal"
    DIAGONAL_LIMIT = "diagonal_limit"


@dataclass(frozen=True)
class KernelEval:
    value: float
    regime: Regime


def airy_kernel(x: float, y: float) -> KernelEval:
    """K(x, y) = (Ai(x)Ai'(y) - Ai(y)Ai'(x)) / (x - y).

    Within ``DIAGONAL_DELTA`` of the diagonal the limit Ai'(m)^2 - m Ai(m)^2
    at the midpoint m is returned instead.
    """
    x = float(x)
    y = float(y)
    if abs(x - y) < DIAGONAL_DELTA:
        m = 0.5 * (x + y)
        ai, aip = airy_pair(m)
        return KernelEval(aip * aip - m * ai * ai, Regime.DIAGONAL_LIMIT)
    (ax, ay), (apx, apy) = airy_pair(np.array([x, y]))
    return KernelEval((ax * apy - ay * apx) / (x - y), Regime.OFF_DIAGONAL)


def airy_kernel_matrix(x, y=None) -> np.ndarray:
    """Vectorised :func:`airy_kernel` on the tensor grid x by y."""
    x = np.asarray(x, dtype=np.float64)
    y = x if y is None else np.asarray(y, dtype=np.float64)
    return impl.airy_kernel_matrix(x, y, DIAGONAL_DELTA)


def _gl_panels(a: float, b: float, n_nodes: int, panel: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    n_panel = max(1, math.ceil((b - a) / panel))
    per = max(8, math.ceil(n_nodes / n_panel))
    t, w = np.polynomial.legendre.leggauss(per)
    edges = np.linspace(a, b, n_panel + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    return (mid[:, None] + half[:, None] * t).ravel(), (half[:, None] * w).ravel()


def airy_kernel_integral_check(x: float, y: float, z_max: float = 60.0, n_nodes: int = 1200) -> float:
    """Truncated quadrature of the integral of Ai(x+z)Ai(y+z) over z in [0, z_max]."""
    if z_max < 30:
        raise ValueError("z_max must be >= 30")
    if n_nodes < 200:
        raise ValueError("n_nodes must be >= 200")
    z, w = _gl_panels(0.0, float(z_max), int(n_nodes))
    ax, _ = airy_pair(x + z)
    ay, _ = airy_pair(y + z)
    return float(np.sum(w * ax * ay))


def hermite_kernel_sum(n: int, x, y) -> np.ndarray:
    """K_n(x, y) as the explicit sum of phi_i(x) phi_i(y), i < n."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    px = hermite_wavefunctions(n, x)
    py = hermite_wavefunctions(n, y)
    return px @ py.T


def hermite_kernel_matrix(n: int, x, y=None, method: str = "auto") -> np.ndarray:
    """K_n on the tensor grid x by y.

    ``method`` is ``"sum"``, ``"cd"`` (Christoffel-Darboux two-term form)
    or ``"auto"``, which uses the sum for n <= 64.
    """
    if not 1 <= n <= 5000:
        raise ValueError("n must be in [1, 5000]")
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    y = x if y is None else np.atleast_1d(np.asarray(y, dtype=np.float64))
    if method == "auto":
        method = "sum" if n <= CD_SWITCH else "cd"
    if method == "sum":
        return hermite_kernel_sum(n, x, y)
    if method == "cd":
        return impl.cd_kernel_matrix(int(n), x, y, DIAGONAL_DELTA)
    raise ValueError(f"unknown method {method!r}")


def hermite_kernel(n: int, x: float, y: float) -> float:
    return float(hermite_kernel_matrix(n, [x], [y])[0, 0])


def edge_scale(n: int) -> float:
    """The factor 2^(1/2) n^(1/6) of the edge map."""
    return math.sqrt(2.0) * n ** (1.0 / 6.0)


def edge_scaled_kernel_matrix(n: int, x, y=None) -> np.ndarray:
    """Edge-rescaled Hermite kernel on the tensor grid x by y."""
    if n < 2:
        raise ValueError("n must be >= 2")
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    y = x if y is None else np.atleast_1d(np.asarray(y, dtype=np.float64))
    s = edge_scale(n)
    c = math.sqrt(2.0 * n)
    return hermite_kernel_matrix(n, x / s + c, y / s + c) / s


def edge_scaled_kernel(n: int, x: float, y: float) -> float:
    return float(edge_scaled_kernel_matrix(n, [x], [y])[0, 0])


def edge_scaling_deviation(n: int, half_width: float = 4.0, n_grid: int = 41) -> float:
    """Sup-norm distance between the rescaled Hermite kernel and the Airy kernel on a square grid."""
    g = np.linspace(-half_width, half_width, n_grid)
    return float(np.max(np.abs(edge_scaled_kernel_matrix(n, g) - airy_kernel_matrix(g))))


def kernel_identity_deviation(lo: float = -6.0, hi: float = 6.0, n_grid: int = 20,
                              z_max: float = 60.0, n_nodes: int = 1200) -> float:
    """Max |closed form - integral form| of the Airy kernel on an n_grid^2 grid."""
    g = np.linspace(lo, hi, n_grid)
    closed = airy_kernel_matrix(g)
    z, w = _gl_panels(0.0, z_max, n_nodes)
    ai, _ = airy_pair((g[:, None] + z[None, :]).ravel())
    ai = ai.reshape(g.size, z.size)
    integral = (ai * w) @ ai.T
    return float(np.max(np.abs(closed - integral)))
