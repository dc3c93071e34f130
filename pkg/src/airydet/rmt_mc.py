"""GUE edge linear statistics: sampling, rescaling, moments, characteristic function.

Eigenvalue convention: joint density proportional to |Vandermonde|^2 exp(-sum x_i^2),
so the spectrum fills roughly (-sqrt(2N), sqrt(2N)).  Draws use the
Dumitriu-Edelman tridiagonal model with diagonal N(0, 1/2) and
off-diagonal chi_{2k} / 2, which has exactly that density.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.stats

from .detasym import complex_log_det, edge_mean, edge_variance
from .kernels import edge_scale
from .operator_disc import default_airy_grid, discretize_airy_operator
from .symbols import SymbolFunction, make_symbol

THREADS_ENV = "AIRYDET_THREADS"
TRUNCATION_PAD = 20.0


@dataclass(frozen=True)
class EdgeSample:
    n_matrix: int
    rescaled: np.ndarray
    seed: int


@dataclass(frozen=True)
class McSummary:
    n_samples: int
    mean: float
    variance: float
    skewness: float
    excess_kurtosis: float
    std_err_mean: float
    predicted_mean: float
    predicted_variance: float


def draw_generator(seed: int, draw: int) -> np.random.Generator:
    """Independent Philox stream for one matrix draw; depends only on (seed, draw)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed) & (2**64 - 1), int(draw)])))


def sample_gue_spectrum(n: int, seed: int, draw: int = 0) -> np.ndarray:
    """Ascending eigenvalues of one GUE matrix (weight exp(-x^2))."""
    if not 2 <= n <= 10_000:
        raise ValueError("n must be in [2, 10000]")
    rng = draw_generator(seed, draw)
    diag = rng.normal(0.0, math.sqrt(0.5), n)
    off = np.sqrt(rng.chisquare(2.0 * np.arange(n - 1, 0, -1))) / 2.0
    try:
        return scipy.linalg.eigvalsh_tridiagonal(diag, off)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"tridiagonal eigensolver failed (seed={seed}, draw={draw})") from exc


def edge_rescale(spectrum: np.ndarray, n: int, seed: int = 0) -> EdgeSample:
    """Map lambda -> 2^(1/2) n^(1/6) (lambda - sqrt(2n)); sorted descending."""
    lam = np.asarray(spectrum, dtype=np.float64)
    rescaled = edge_scale(n) * (lam - math.sqrt(2.0 * n))
    return EdgeSample(int(n), np.sort(rescaled)[::-1].copy(), int(seed))


def linear_statistic(sample: EdgeSample, f: SymbolFunction, alpha: float) -> float:
    """Sum of f(x_i / alpha) over rescaled eigenvalues inside the symbol's reach."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    r = sample.rescaled
    keep = r >= -(f.decay_scale * alpha + TRUNCATION_PAD)
    return float(np.sum(f(r[keep] / alpha)))


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, int(threads))


def edge_statistics(f: SymbolFunction, alphas, n: int, n_samples: int, seed: int,
                    threads: int | None = None) -> np.ndarray:
    """Statistic per (draw, alpha); shape (n_samples, len(alphas)).

    Draw i always uses stream (seed, i), and rows are stored by draw index,
    so the result does not depend on the thread count.
    """
    alphas = [float(a) for a in np.atleast_1d(alphas)]

    def one(i: int) -> list[float]:
        sample = edge_rescale(sample_gue_spectrum(n, seed, i), n, seed)
        return [linear_statistic(sample, f, a) for a in alphas]

    workers = _threads(threads)
    if workers == 1:
        rows = [one(i) for i in range(n_samples)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, range(n_samples)))
    return np.array(rows, dtype=np.float64).reshape(n_samples, len(alphas))


def summarize(values: np.ndarray, predicted_mean: float, predicted_variance: float) -> McSummary:
    values = np.asarray(values, dtype=np.float64)
    m = values.size
    mean = float(np.mean(values))
    var = float(np.var(values))
    if var > 0:
        skew = float(scipy.stats.skew(values))
        kurt = float(scipy.stats.kurtosis(values))
    else:
        skew = kurt = 0.0
    return McSummary(m, mean, var, skew, kurt, math.sqrt(var / m), float(predicted_mean),
                     float(predicted_variance))


def run_mc(f: SymbolFunction, alpha: float, n: int, n_samples: int, seed: int,
           threads: int | None = None) -> McSummary:
    """Monte Carlo moments of the edge statistic with the limiting predictions attached."""
    if n_samples < 100:
        raise ValueError("n_samples must be >= 100")
    stats = edge_statistics(f, [alpha], n, n_samples, seed, threads)[:, 0]
    return summarize(stats, edge_mean(f, alpha), edge_variance(f))


def gaussian_log_char(f: SymbolFunction, s: float, alpha: float) -> complex:
    """Limiting log characteristic function i s mu - s^2 sigma^2 / 2."""
    return complex(-0.5 * s * s * edge_variance(f), s * edge_mean(f, alpha))


def _char_symbol(f: SymbolFunction, s: float) -> SymbolFunction:
    base = f.func
    return make_symbol(lambda x: np.expm1(1j * s * base(x)), f.decay_scale, f"charfn({f.label()})",
                       (("s", float(s)),))


def char_function_log(f: SymbolFunction, s: float, alpha: float) -> complex:
    """log det(I + A_alpha(h)) with h = exp(i s f) - 1, continuous branch through s = 0."""
    sup = float(np.max(np.abs(f(np.linspace(-f.decay_scale, f.decay_scale, 4001)))))
    if abs(s) * sup >= math.pi / 2:
        raise ValueError("need |s| sup|f| < pi/2")
    if s == 0 or sup == 0:
        return 0j
    h = _char_symbol(f, s)
    op = discretize_airy_operator(h, alpha, default_airy_grid(f, alpha))
    return complex_log_det(op.matrix)


def char_function_det(f: SymbolFunction, s: float, alpha: float) -> complex:
    """phi(s) = det(I + A_alpha(exp(i s f) - 1))."""
    if s == 0:
        return 1 + 0j
    return complex(np.exp(char_function_log(f, s, alpha)))
