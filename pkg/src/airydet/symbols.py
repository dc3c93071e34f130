"""Symbol functions f and the shipped test families.

A symbol is a real Schwartz function together with the bookkeeping the
discretizations need: how far out it is non-negligible and whether
1 + f stays away from zero on the closed negative half-line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

DECAY_TOL = 1e-14
ADMISSIBLE_EPS = 1e-8
_SCAN_MAX = 400.0


@dataclass(frozen=True)
class SymbolFunction:
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    decay_scale: float
    sup_norm_neg: float
    admissible: bool
    name: str = "custom"
    params: tuple = ()

    def __call__(self, x):
        return self.func(np.asarray(x, dtype=np.float64))

    @property
    def is_zero(self) -> bool:
        return self.name == "zero"

    def label(self) -> str:
        """Round-trippable text form, e.g. ``shifted_gauss:t=0.25,shift=1``."""
        if not self.params:
            return self.name
        return self.name + ":" + ",".join(f"{k}={v!r}" for k, v in self.params)


def _scan_decay(func: Callable, tol: float = DECAY_TOL) -> float:
    xs = np.linspace(0.0, _SCAN_MAX, 80001)
    big = (np.abs(func(xs)) >= tol) | (np.abs(func(-xs)) >= tol)
    if big[-1]:
        raise ValueError(f"symbol does not decay below {tol:g} within |x| <= {_SCAN_MAX:g}")
    if not big.any():
        return 1.0
    return float(xs[np.nonzero(big)[0][-1] + 1])


def make_symbol(func: Callable, decay_scale: float | None = None, name: str = "custom",
                params: tuple = ()) -> SymbolFunction:
    """Wrap a vectorised callable, measuring decay and admissibility by sampling."""
    if decay_scale is None:
        decay_scale = _scan_decay(func)
    decay_scale = max(float(decay_scale), 1.0)
    neg = -np.linspace(0.0, decay_scale, 1000)
    vals = func(neg)
    sup_neg = float(np.max(np.abs(vals)))
    if np.iscomplexobj(vals):
        admissible = bool(np.min(np.abs(1.0 + vals)) >= ADMISSIBLE_EPS)
    else:
        admissible = bool(np.min(1.0 + vals) >= ADMISSIBLE_EPS)
    return SymbolFunction(func, decay_scale, sup_neg, admissible, name, tuple(params))


def _gauss_radius(t: float) -> float:
    if t == 0:
        return 1.0
    # small pad so |f| is strictly below DECAY_TOL at the radius itself
    return math.sqrt(max(math.log(abs(t) / DECAY_TOL), 0.0)) + 1e-6


def zero() -> SymbolFunction:
    return make_symbol(lambda x: np.zeros_like(x, dtype=np.float64), 1.0, "zero")


def gauss(t: float) -> SymbolFunction:
    """f(x) = t exp(-x^2)."""
    t = float(t)
    return make_symbol(lambda x: t * np.exp(-x * x), _gauss_radius(t), "gauss", (("t", t),))


def shifted_gauss(t: float, shift: float = 1.0) -> SymbolFunction:
    """f(x) = t exp(-(x + shift)^2)."""
    t = float(t)
    shift = float(shift)
    return make_symbol(lambda x: t * np.exp(-(x + shift) ** 2), abs(shift) + _gauss_radius(t),
                       "shifted_gauss", (("t", t), ("shift", shift)))


def _positive_tail(x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x, dtype=np.float64)
    pos = x > 0
    xp = x[pos]
    out[pos] = np.exp(-1.0 / xp - xp * xp)
    return out


def gauss_plus_tail(t: float, shift: float = 1.0, b: float = 0.5) -> SymbolFunction:
    """shifted_gauss plus a smooth bump b*exp(-1/x - x^2) living on x > 0 only.

    Agrees with ``shifted_gauss(t, shift)`` on the closed negative half-line.
    """
    t, shift, b = float(t), float(shift), float(b)
    radius = max(abs(shift) + _gauss_radius(t), _gauss_radius(b) + 1.0)
    return make_symbol(lambda x: t * np.exp(-(x + shift) ** 2) + b * _positive_tail(x), radius,
                       "gauss_plus_tail", (("t", t), ("shift", shift), ("b", b)))


def power_of(f: SymbolFunction, power: float) -> SymbolFunction:
    """The symbol f_p with 1 + f_p = (1 + f)^p (needs 1 + f > 0 everywhere)."""
    power = float(power)
    base = f.func
    return make_symbol(lambda x: np.expm1(power * np.log1p(base(x))), f.decay_scale,
                       f"power({f.label()})", (("p", power),))


def scaled(f: SymbolFunction, s: float) -> SymbolFunction:
    s = float(s)
    base = f.func
    return make_symbol(lambda x: s * base(x), f.decay_scale, f"scaled({f.label()})", (("s", s),))


FAMILIES: dict[str, Callable[..., SymbolFunction]] = {
    "zero": zero,
    "gauss": gauss,
    "shifted_gauss": shifted_gauss,
    "gauss_plus_tail": gauss_plus_tail,
}

CANONICAL_AMPLITUDES = (-0.5, -0.25, 0.25, 0.5)


def canonical_symbols() -> list[SymbolFunction]:
    """t exp(-x^2) and t exp(-(x+1)^2) for t in +-0.25, +-0.5."""
    out = []
    for t in CANONICAL_AMPLITUDES:
        out.append(gauss(t))
        out.append(shifted_gauss(t, 1.0))
    return out


def parse_symbol(text: str) -> SymbolFunction:
    """Parse ``family[:key=value,...]``; a bare number after the colon is taken as ``t``."""
    name, _, rest = text.strip().partition(":")
    name = name.strip()
    if name not in FAMILIES:
        raise ValueError(f"unknown symbol family {name!r}; choose from {sorted(FAMILIES)}")
    kwargs: dict[str, float] = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq:
            key, value = "t", key
        try:
            kwargs[key.strip()] = float(value)
        except ValueError:
            raise ValueError(f"symbol parameter {key.strip()!r} is not a number: {value!r}") from None
    if "t" in kwargs and abs(kwargs["t"]) >= 1.0:
        raise ValueError("amplitude |t| must be < 1 for the shipped families")
    try:
        sym = FAMILIES[name](**kwargs)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name!r}: {exc}") from None
    if not sym.admissible:
        raise ValueError(f"symbol {text!r} is not admissible (1 + f must stay positive on x <= 0)")
    return sym


def half_line_symbol(f: SymbolFunction, transform: Callable | None = None):
    """The even function xi -> T(f(-xi^2)) and the xi-radius past which it is negligible."""
    base = f.func

    if transform is None:
        def g(xi):
            return base(-np.asarray(xi, dtype=np.float64) ** 2)
    else:
        def g(xi):
            return transform(base(-np.asarray(xi, dtype=np.float64) ** 2))

    return g, math.sqrt(f.decay_scale) + 0.5
