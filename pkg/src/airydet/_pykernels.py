"""Pure numpy implementations of the hot kernels.

Mirrors the function set of the compiled ``_ckernels`` module one-to-one;
``airydet._backend`` picks whichever is importable.
"""

from __future__ import annotations

import math

import numpy as np

from ._airy_tables import (
    ANCHOR_STEP,
    ANCHOR_X0,
    ASYM_EDGE,
    N_TAYLOR,
    TAYLOR_TABLE,
    U_COEF,
    V_COEF,
)

_RESCALE = 1e200
_LOG_RESCALE = math.log(_RESCALE)
_PI_QUARTER = math.pi**-0.25


def _asym_sum(coef: np.ndarray, zeta: np.ndarray, start: int, stride: int) -> np.ndarray:
    total = np.zeros_like(zeta)
    prev = np.full_like(zeta, np.inf)
    live = np.ones(zeta.shape, dtype=bool)
    sign = 1.0
    inv = 1.0 / zeta
    zp = np.ones_like(zeta) if start == 0 else inv
    zstep = inv if stride == 1 else inv * inv
    for k in range(start, coef.size, stride):
        term = sign * coef[k] * zp
        zp = zp * zstep
        live &= np.abs(term) < prev
        if not live.any():
            break
        total = np.where(live, total + term, total)
        prev = np.where(live, np.abs(term), prev)
        sign = -sign
    return total


def _asym_positive(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    zeta = 2.0 / 3.0 * x * np.sqrt(x)
    su = _asym_sum(U_COEF, zeta, 0, 1)
    sv = _asym_sum(V_COEF, zeta, 0, 1)
    e = np.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    q = x**0.25
    return e / q * su, -e * q * sv


def _asym_negative(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    t = -x
    zeta = 2.0 / 3.0 * t * np.sqrt(t)
    pu = _asym_sum(U_COEF, zeta, 0, 2)
    qu = _asym_sum(U_COEF, zeta, 1, 2)
    pv = _asym_sum(V_COEF, zeta, 0, 2)
    qv = _asym_sum(V_COEF, zeta, 1, 2)
    theta = zeta - math.pi / 4.0
    c, s = np.cos(theta), np.sin(theta)
    q = t**0.25
    rpi = 1.0 / math.sqrt(math.pi)
    return rpi / q * (c * pu + s * qu), rpi * q * (s * pv - c * qv)


def _taylor(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    idx = np.floor((x - ANCHOR_X0) / ANCHOR_STEP + 0.5).astype(np.intp)
    h = x - (ANCHOR_X0 + idx * ANCHOR_STEP)
    coef = TAYLOR_TABLE[idx]
    y = coef[:, N_TAYLOR - 1].copy()
    dy = (N_TAYLOR - 1) * coef[:, N_TAYLOR - 1]
    for k in range(N_TAYLOR - 2, -1, -1):
        y = y * h + coef[:, k]
        if k >= 1:
            dy = dy * h + k * coef[:, k]
    return y, dy


def airy_pair(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ai and Ai' on a 1-D float64 array (no domain checks)."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    ai = np.empty_like(x)
    aip = np.empty_like(x)
    mid = np.abs(x) < ASYM_EDGE
    pos = x >= ASYM_EDGE
    neg = x <= -ASYM_EDGE
    if mid.any():
        ai[mid], aip[mid] = _taylor(x[mid])
    if pos.any():
        with np.errstate(under="ignore"):
            ai[pos], aip[pos] = _asym_positive(x[pos])
    if neg.any():
        ai[neg], aip[neg] = _asym_negative(x[neg])
    return ai, aip


def airy_kernel_matrix(x: np.ndarray, y: np.ndarray, delta: float) -> np.ndarray:
    """Matrix of (Ai(x)Ai'(y) - Ai(y)Ai'(x)) / (x - y) with the diagonal limit."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    ax, apx = airy_pair(x)
    ay, apy = airy_pair(y)
    diff = x[:, None] - y[None, :]
    near = np.abs(diff) < delta
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (ax[:, None] * apy[None, :] - ay[None, :] * apx[:, None]) / diff
    if near.any():
        i, j = np.nonzero(near)
        m = 0.5 * (x[i] + y[j])
        am, apm = airy_pair(m)
        out[i, j] = apm * apm - m * am * am
    return out


def _hermite_run(n_max: int, x: np.ndarray, keep_all: bool):
    """Three-term recurrence carried as mantissa * exp(log scale) to avoid under/overflow."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    prev = np.zeros_like(x)
    cur = np.full_like(x, _PI_QUARTER)
    logs = -0.5 * x * x
    out = np.empty((x.size, n_max)) if keep_all else None
    tail = []
    for k in range(n_max + 1):
        if keep_all and k < n_max:
            out[:, k] = _unscale(cur, logs)
        if k >= n_max - 1:
            tail.append(_unscale(cur, logs))
        if k == n_max:
            break
        nxt = x * math.sqrt(2.0 / (k + 1)) * cur - math.sqrt(k / (k + 1)) * prev
        big = np.abs(nxt) > _RESCALE
        if big.any():
            nxt[big] /= _RESCALE
            cur = np.where(big, cur / _RESCALE, cur)
            logs = np.where(big, logs + _LOG_RESCALE, logs)
        prev, cur = cur, nxt
    return out, tail


def _unscale(m: np.ndarray, logs: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", under="ignore"):
        val = np.sign(m) * np.exp(np.log(np.abs(m)) + logs)
    if not np.all(np.isfinite(val)):
        raise OverflowError("Hermite recurrence left the representable range")
    return val


def hermite_table(n_max: int, x: np.ndarray) -> np.ndarray:
    """phi_0..phi_{n_max-1} at each x; shape (len(x), n_max)."""
    out, _ = _hermite_run(n_max, x, keep_all=True)
    return out


def hermite_tail(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """phi_{n-1}, phi_n at each x (n >= 1)."""
    _, tail = _hermite_run(n, x, keep_all=False)
    return tail[-2], tail[-1]


def cd_kernel_matrix(n: int, x: np.ndarray, y: np.ndarray, delta: float) -> np.ndarray:
    """Christoffel-Darboux form of sum_{i<n} phi_i(x) phi_i(y)."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    pxm, px = hermite_tail(n, x)
    pym, py = hermite_tail(n, y)
    diff = x[:, None] - y[None, :]
    near = np.abs(diff) < delta
    c = math.sqrt(n / 2.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = c * (px[:, None] * pym[None, :] - pxm[:, None] * py[None, :]) / diff
    if near.any():
        i, j = np.nonzero(near)
        m = 0.5 * (x[i] + y[j])
        pm, p0 = hermite_tail(n, m)
        out[i, j] = n * (pm * pm + p0 * p0) - math.sqrt(2.0 * n) * m * p0 * pm
    return out

