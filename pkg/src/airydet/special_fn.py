"""Airy function Ai, its derivative, and the Hermite oscillator functions.

Ai is evaluated in three regimes: a Taylor expansion about the nearest
anchor on [-9, 9] (the anchor at 0 is the Maclaurin series), and the
standard asymptotic expansions beyond +-9.  See ``_airy_tables`` for how
the anchors are generated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _airy_tables
from ._backend import impl

X_GUARD = 3000.0
HERMITE_N_MAX = 5000


@dataclass(frozen=True)
class AiryValue:
    ai: float
    ai_prime: float


def _checked(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=np.float64)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel()
    if not np.all(np.isfinite(flat)):
        raise ValueError("Airy argument must be finite")
    if np.any(np.abs(flat) > X_GUARD):
        raise ValueError(f"Airy argument outside |x| <= {X_GUARD:g}")
    return flat, scalar


def _reshape(values: np.ndarray, like, scalar: bool):
    if scalar:
        return float(values[0])
    return values.reshape(np.shape(like))


def airy_pair(x):
    """Return ``(Ai(x), Ai'(x))``; accepts scalars or arrays."""
    flat, scalar = _checked(x)
    ai, aip = impl.airy_pair(flat)
    return _reshape(ai, x, scalar), _reshape(aip, x, scalar)


def airy_ai(x):
    """Ai(x). Absolute error about 1e-14 for |x| <= 20; relative error about 1e-14 for x > 0."""
    return airy_pair(x)[0]


def airy_ai_prime(x):
    """Ai'(x), same accuracy as :func:`airy_ai`."""
    return airy_pair(x)[1]


def airy_value(x: float) -> AiryValue:
    ai, aip = airy_pair(float(x))
    return AiryValue(ai, aip)


def airy_ai_second(x):
    """Ai''(x) from the defining ODE."""
    flat, scalar = _checked(x)
    ai, _ = impl.airy_pair(flat)
    return _reshape(flat * ai, x, scalar)


def branch_second_derivative(x: float) -> float:
    """Ai''(x) by differentiating the evaluation branch that owns ``x``.

    Unlike :func:`airy_ai_second` this does not use the ODE, so comparing
    the two gives an honest residual check of each branch.
    """
    x = float(x)
    _checked(x)
    edge = _airy_tables.ASYM_EDGE
    if abs(x) >= edge:
        return _airy_tables.asym_second_derivative(x)
    step = _airy_tables.ANCHOR_STEP
    idx = int(np.floor((x - _airy_tables.ANCHOR_X0) / step + 0.5))
    h = x - (_airy_tables.ANCHOR_X0 + idx * step)
    coef = _airy_tables.TAYLOR_TABLE[idx]
    k = np.arange(2, coef.size)
    return float(np.sum(k * (k - 1) * coef[2:] * h ** (k - 2)))


def branch_switch_points() -> tuple[float, ...]:
    """Internal switchover abscissae between evaluation branches."""
    edge = _airy_tables.ASYM_EDGE
    step = _airy_tables.ANCHOR_STEP
    inner = tuple(float(v) for v in _airy_tables.ANCHORS[:-1] + step / 2)
    return (-edge,) + inner + (edge,)


def hermite_wavefunctions(n_max: int, x):
    """Orthonormal oscillator functions phi_0..phi_{n_max-1}.

    phi_k(x) = H_k(x) exp(-x^2/2) / sqrt(2^k k! sqrt(pi)).  For scalar ``x``
    returns a vector of length ``n_max``; for an array, shape
    ``x.shape + (n_max,)``.
    """
    if not 0 < n_max <= HERMITE_N_MAX:
        raise ValueError(f"n_max must be in (0, {HERMITE_N_MAX}]")
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("x must be finite")
    table = impl.hermite_table(int(n_max), np.atleast_1d(arr).ravel())
    if arr.ndim == 0:
        return table[0]
    return table.reshape(arr.shape + (n_max,))


def hermite_pair(n: int, x) -> tuple[np.ndarray, np.ndarray]:
    """(phi_{n-1}(x), phi_n(x)) without forming the whole table."""
    if not 1 <= n <= HERMITE_N_MAX:
        raise ValueError(f"n must be in [1, {HERMITE_N_MAX}]")
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel()
    return impl.hermite_tail(int(n), arr)
