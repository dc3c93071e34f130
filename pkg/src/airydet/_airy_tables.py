"""Taylor anchor tables and asymptotic coefficients for Ai / Ai'.

Evaluation layout (both backends read these arrays):

* ``|x| < ASYM_EDGE``: Taylor expansion of Ai about the nearest anchor
  ``c`` on a uniform anchor lattice.  Anchors on the negative side are
  produced by stepping the Airy ODE forward from the Maclaurin data at 0;
  anchors on the positive side by stepping backward from the asymptotic
  value at ``ASYM_EDGE`` (the direction in which Ai is dominant, so the
  recursion is stable).
* ``x >= ASYM_EDGE``: exponentially small asymptotic series.
* ``x <= -ASYM_EDGE``: oscillatory modulus/phase asymptotic series.
"""

from __future__ import annotations

import math

import numpy as np

ASYM_EDGE = 9.0
ANCHOR_STEP = 0.25
N_TAYLOR = 24
N_ASYM = 48

AI0 = 1.0 / (3.0 ** (2.0 / 3.0) * math.gamma(2.0 / 3.0))
AIP0 = -1.0 / (3.0 ** (1.0 / 3.0) * math.gamma(1.0 / 3.0))


def _asym_coefficients(n: int) -> tuple[np.ndarray, np.ndarray]:
    u = np.empty(n)
    v = np.empty(n)
    u[0] = v[0] = 1.0
    for k in range(1, n):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
        v[k] = -(6 * k + 1) / (6 * k - 1) * u[k]
    return u, v


U_COEF, V_COEF = _asym_coefficients(N_ASYM)


def _truncated(coef: np.ndarray, zeta: float, start: int = 0, stride: int = 1) -> tuple[float, float]:
    """Optimally truncated sum_j (-1)^j coef[k_j] zeta^-k_j, k_j = start + j*stride.

    Also returns the derivative of the sum with respect to zeta.
    """
    total = 0.0
    dtotal = 0.0
    prev = math.inf
    sign = 1.0
    for k in range(start, len(coef), stride):
        term = sign * coef[k] * zeta**-k
        if abs(term) >= prev:
            break
        total += term
        dtotal -= k * term / zeta
        prev = abs(term)
        if abs(term) < 1e-18 * abs(total):
            break
        sign = -sign
    return total, dtotal


def asym_positive(x: float) -> tuple[float, float]:
    """Ai, Ai' for large positive x."""
    zeta = 2.0 / 3.0 * x * math.sqrt(x)
    su, _ = _truncated(U_COEF, zeta)
    sv, _ = _truncated(V_COEF, zeta)
    e = math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
    q = x**0.25
    return e / q * su, -e * q * sv


def asym_negative(x: float) -> tuple[float, float]:
    """Ai, Ai' for large negative x."""
    t = -x
    zeta = 2.0 / 3.0 * t * math.sqrt(t)
    pu, _ = _truncated(U_COEF, zeta, 0, 2)
    qu, _ = _truncated(U_COEF, zeta, 1, 2)
    pv, _ = _truncated(V_COEF, zeta, 0, 2)
    qv, _ = _truncated(V_COEF, zeta, 1, 2)
    theta = zeta - math.pi / 4.0
    c, s = math.cos(theta), math.sin(theta)
    q = t**0.25
    rpi = 1.0 / math.sqrt(math.pi)
    return rpi / q * (c * pu + s * qu), rpi * q * (s * pv - c * qv)


def taylor_coefficients(c: float, a0: float, a1: float, n: int) -> np.ndarray:
    """Coefficients a_k of y(c + h) = sum a_k h^k for y'' = x y."""
    a = np.zeros(n)
    a[0] = a0
    a[1] = a1
    if n > 2:
        a[2] = c * a0 / 2.0
    for k in range(1, n - 2):
        a[k + 2] = (c * a[k] + a[k - 1]) / ((k + 2) * (k + 1))
    return a


def _step(c: float, a0: float, a1: float, h: float) -> tuple[float, float]:
    a = taylor_coefficients(c, a0, a1, 48)
    k = np.arange(48)
    powers = h ** k
    y = float(np.dot(a, powers))
    dy = float(np.dot(a[1:] * k[1:], powers[:-1]))
    return y, dy


def build_anchor_table() -> tuple[np.ndarray, np.ndarray, float]:
    """Return (anchor x values, coefficient table [n_anchor, N_TAYLOR], x of first anchor)."""
    n_side = int(round(ASYM_EDGE / ANCHOR_STEP))
    xs = np.arange(-n_side, n_side + 1) * ANCHOR_STEP
    vals = np.empty((xs.size, 2))
    mid = n_side
    vals[mid] = AI0, AIP0
    y, dy = AI0, AIP0
    for i in range(mid - 1, -1, -1):
        y, dy = _step(xs[i + 1], y, dy, -ANCHOR_STEP)
        vals[i] = y, dy
    y, dy = asym_positive(ASYM_EDGE)
    vals[-1] = y, dy
    for i in range(xs.size - 2, mid, -1):
        y, dy = _step(xs[i + 1], y, dy, -ANCHOR_STEP)
        vals[i] = y, dy
    table = np.array([taylor_coefficients(c, a0, a1, N_TAYLOR) for c, (a0, a1) in zip(xs, vals)])
    return xs, table, float(xs[0])


def backward_value_at_zero() -> tuple[float, float]:
    """Ai(0), Ai'(0) reached by stepping down from the asymptotic branch.

    Used only for branch-consistency checks against the Maclaurin constants.
    """
    y, dy = asym_positive(ASYM_EDGE)
    n_side = int(round(ASYM_EDGE / ANCHOR_STEP))
    for i in range(n_side, 0, -1):
        y, dy = _step(i * ANCHOR_STEP, y, dy, -ANCHOR_STEP)
    return y, dy


ANCHORS, TAYLOR_TABLE, ANCHOR_X0 = build_anchor_table()


def asym_second_derivative(x: float) -> float:
    """Ai''(x) by differentiating the asymptotic series for Ai' term by term."""
    if x > 0:
        zeta = 2.0 / 3.0 * x * math.sqrt(x)
        sv, dsv = _truncated(V_COEF, zeta)
        e = math.exp(-zeta) / (2.0 * math.sqrt(math.pi))
        return -e * (0.25 * x**-0.75 * sv - x**0.75 * sv + x**0.75 * dsv)
    t = -x
    zeta = 2.0 / 3.0 * t * math.sqrt(t)
    pv, dpv = _truncated(V_COEF, zeta, 0, 2)
    qv, dqv = _truncated(V_COEF, zeta, 1, 2)
    theta = zeta - math.pi / 4.0
    c, s = math.cos(theta), math.sin(theta)
    body = 0.25 * t**-0.75 * (s * pv - c * qv) + t**0.75 * (c * pv + s * qv + s * dpv - c * dqv)
    return -body / math.sqrt(math.pi)
