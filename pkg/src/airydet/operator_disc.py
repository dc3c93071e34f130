"""Nystrom discretizations: Airy operator, Airy transform, Wiener-Hopf operator.

All matrices use the symmetric sqrt(w) weighting, M_ij = sqrt(w_i) k(x_i, x_j) sqrt(w_j),
so that det(I + M) approximates the Fredholm determinant.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import fourier
from .kernels import airy_kernel_matrix
from .special_fn import airy_pair
from .symbols import SymbolFunction

PANEL_LENGTH = 2.0
NODES_PER_PANEL = 16
RIGHT_EDGE = 8.0
LEFT_PAD = 10.0
WH_HALF_LENGTH = 40.0


class Kind(enum.Enum):
    AIRY = "airy"
    WIENER_HOPF = "wiener_hopf"
    AIRY_TRANSFORM = "airy_transform"


@dataclass(frozen=True)
class QuadratureGrid:
    nodes: np.ndarray
    weights: np.ndarray
    window: tuple[float, float]
    rule: str = "composite_gl"

    def __post_init__(self):
        for arr in (self.nodes, self.weights):
            arr.setflags(write=False)

    @property
    def size(self) -> int:
        return self.nodes.size


@dataclass(frozen=True)
class DiscretizedOperator:
    matrix: np.ndarray
    grid: QuadratureGrid
    alpha: float
    kind: Kind

    def __post_init__(self):
        self.matrix.setflags(write=False)


def build_grid(window, n: int, rule: str = "composite_gl", panel_length: float = PANEL_LENGTH) -> QuadratureGrid:
    """Quadrature nodes and weights on ``window = (a, b)``.

    ``gauss_legendre`` maps an n-point rule onto the window.  ``composite_gl``
    splits the window into equal panels no longer than ``panel_length`` and
    uses ceil(n / panels) nodes in each (so the total is at least n).
    ``uniform`` is the midpoint rule, used where exact Toeplitz structure is
    wanted.
    """
    a, b = (float(v) for v in window)
    if not (math.isfinite(a) and math.isfinite(b)) or b <= a:
        raise ValueError(f"invalid window {window!r}")
    if n < 2 or (rule != "gauss_legendre" and n < 4):
        raise ValueError("n too small")
    if rule == "gauss_legendre":
        t, w = np.polynomial.legendre.leggauss(int(n))
        half = 0.5 * (b - a)
        return QuadratureGrid(0.5 * (a + b) + half * t, half * w, (a, b), rule)
    if rule == "composite_gl":
        n_panel = max(1, math.ceil((b - a) / panel_length - 1e-12))
        per = max(2, math.ceil(n / n_panel))
        t, w = np.polynomial.legendre.leggauss(per)
        edges = np.linspace(a, b, n_panel + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        nodes = (mid[:, None] + half[:, None] * t).ravel()
        weights = (half[:, None] * w).ravel()
        return QuadratureGrid(nodes, weights, (a, b), rule)
    if rule == "uniform":
        h = (b - a) / n
        return QuadratureGrid(a + (np.arange(n) + 0.5) * h, np.full(n, h), (a, b), rule)
    raise ValueError(f"unknown quadrature rule {rule!r}")


def airy_window(f: SymbolFunction, alpha: float, scale: float = 1.0) -> tuple[float, float]:
    """Truncation window [-(alpha * decay_scale + 10), 8], optionally stretched by ``scale``."""
    return (-scale * (alpha * f.decay_scale + LEFT_PAD), scale * RIGHT_EDGE)


def default_airy_grid(f: SymbolFunction, alpha: float, nodes_per_panel: int = NODES_PER_PANEL,
                      window_scale: float = 1.0) -> QuadratureGrid:
    """Composite Gauss-Legendre grid on the truncation window.

    Panels have length <= 2 with ``nodes_per_panel`` nodes each; the total
    never drops below max(256, 16 alpha^(3/4)).
    """
    a, b = airy_window(f, alpha, window_scale)
    n_panel = math.ceil((b - a) / PANEL_LENGTH)
    budget = max(256, 16.0 * alpha**0.75, nodes_per_panel * n_panel)
    return build_grid((a, b), int(math.ceil(budget)), "composite_gl")


def discretize_airy_operator(f: SymbolFunction, alpha: float, grid: QuadratureGrid | None = None,
                             order: str = "left", check: bool = True) -> DiscretizedOperator:
    """Matrix of the Airy operator with symbol f(x / alpha).

    ``order="left"`` puts the multiplier on the left, sqrt(w_i) f(x_i/alpha) K(x_i, x_j) sqrt(w_j);
    ``"right"`` puts it on the right.  Both have the same determinant.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if check and not f.admissible:
        raise ValueError(f"symbol {f.label()} is not admissible")
    if grid is None:
        grid = default_airy_grid(f, alpha)
    if check and -grid.window[0] < alpha * f.decay_scale:
        raise ValueError(
            f"window left edge {grid.window[0]:g} does not cover alpha*decay_scale={alpha * f.decay_scale:g}"
        )
    x = grid.nodes
    sw = np.sqrt(grid.weights)
    fx = f(x / alpha)
    if not np.any(fx):
        return DiscretizedOperator(np.zeros((x.size, x.size)), grid, float(alpha), Kind.AIRY)
    k = airy_kernel_matrix(x)
    if order == "left":
        mat = (sw * fx)[:, None] * k * sw[None, :]
    elif order == "right":
        mat = sw[:, None] * k * (fx * sw)[None, :]
    else:
        raise ValueError("order must be 'left' or 'right'")
    return DiscretizedOperator(mat, grid, float(alpha), Kind.AIRY)


def discrete_airy_transform(grid: QuadratureGrid) -> DiscretizedOperator:
    """T_ij = sqrt(w_i) Ai(x_i + x_j) sqrt(w_j) on a symmetric window."""
    a, b = grid.window
    if not math.isclose(a, -b, rel_tol=0.0, abs_tol=1e-12 * max(1.0, abs(b))):
        raise ValueError("Airy transform needs a symmetric window [-L, L]")
    x = grid.nodes
    s = (x[:, None] + x[None, :]).ravel()
    ai, _ = airy_pair(s)
    sw = np.sqrt(grid.weights)
    mat = sw[:, None] * ai.reshape(x.size, x.size) * sw[None, :]
    mat = 0.5 * (mat + mat.T)
    return DiscretizedOperator(mat, grid, 1.0, Kind.AIRY_TRANSFORM)


def wiener_hopf_kernel(g: Callable, y_max: float, u) -> np.ndarray:
    """k(u) = (1 / 2 pi) * integral exp(i u xi) g(xi) d xi for even g."""
    fourier.check_window(g, y_max)
    return fourier.even_inverse_transform(g, u, y_max)


def discretize_wiener_hopf(g: Callable, y_max: float, half_length: float = WH_HALF_LENGTH,
                           n: int | None = None, rule: str = "composite_gl") -> DiscretizedOperator:
    """Truncated Wiener-Hopf operator W(g) on [0, half_length].

    ``g`` must be even and negligible beyond ``y_max``.  On a ``uniform``
    grid the kernel is evaluated at exact multiples of the spacing, so the
    matrix is Toeplitz bit-for-bit.
    """
    if half_length <= 0:
        raise ValueError("half_length must be positive")
    if n is None:
        n = NODES_PER_PANEL * math.ceil(half_length / PANEL_LENGTH)
    grid = build_grid((0.0, half_length), n, rule)
    x = grid.nodes
    sw = np.sqrt(grid.weights)
    if rule == "uniform":
        h = grid.weights[0]
        lags = np.arange(x.size) * h
        kl = wiener_hopf_kernel(g, y_max, lags)
        idx = np.abs(np.arange(x.size)[:, None] - np.arange(x.size)[None, :])
        kmat = kl[idx]
    else:
        diff = np.abs(x[:, None] - x[None, :])
        uniq, inv = np.unique(diff, return_inverse=True)
        kmat = wiener_hopf_kernel(g, y_max, uniq)[inv].reshape(diff.shape)
    if not np.all(np.isfinite(kmat)):
        raise ArithmeticError("Wiener-Hopf kernel is not finite")
    mat = sw[:, None] * kmat * sw[None, :]
    mat = 0.5 * (mat + mat.T)
    return DiscretizedOperator(mat, grid, float(half_length), Kind.WIENER_HOPF)
