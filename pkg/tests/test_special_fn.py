import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial.hermite import hermgauss

from airydet import special_fn as sf

mpmath.mp.dps = 30


def mp_ai(x):
    return float(mpmath.airyai(x)), float(mpmath.airyai(x, derivative=1))


def test_values_at_origin():
    ai, aip = sf.airy_pair(0.0)
    assert abs(ai - 0.3550280538878172) < 1e-15
    assert abs(aip - (-0.2588194037928068)) < 1e-15
    # Ai'(0)^2 = 0.0669874838..., computed from the closed form 3^(-2/3) / Gamma(1/3)^2
    assert abs(aip**2 - 0.06698748386) < 1e-10


@pytest.mark.parametrize("x", [-60.0, -20.5, -9.0, -8.99, -4.8, -1.3, 0.7, 4.8, 8.999, 9.0, 9.01, 15.0, 25.0])
def test_against_mpmath(x):
    ai, aip = sf.airy_pair(x)
    ref, refp = mp_ai(x)
    scale = max(1.0, abs(x)) ** 0.25
    if x > 0:
        # relative accuracy in the decaying region
        assert abs(ai / ref - 1) < 1e-12
        assert abs(aip / refp - 1) < 1e-12
    else:
        assert abs(ai - ref) < 1e-12 * scale
        assert abs(aip - refp) < 1e-12 * scale * math.sqrt(max(1.0, abs(x)))


def test_dense_grid_against_mpmath():
    xs = np.linspace(-30, 10, 401)
    ai, aip = sf.airy_pair(xs)
    ref = np.array([mp_ai(x) for x in xs])
    assert np.max(np.abs(ai - ref[:, 0])) < 1e-12
    assert np.max(np.abs(aip - ref[:, 1]) / np.maximum(1, np.sqrt(np.abs(xs)))) < 1e-12


def test_far_right_tail_relative():
    ai = sf.airy_ai(100.0)
    assert ai > 0
    assert abs(ai / float(mpmath.airyai(100)) - 1) < 1e-12


def test_deep_underflow_is_zero_not_nan():
    assert sf.airy_ai(2000.0) == 0.0
    assert np.isfinite(sf.airy_ai(-2000.0))


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf, 1e6, -1e6])
def test_rejects_out_of_domain(bad):
    with pytest.raises(ValueError):
        sf.airy_pair(bad)


def test_shapes_preserved():
    x = np.linspace(-2, 2, 12).reshape(3, 4)
    ai, aip = sf.airy_pair(x)
    assert ai.shape == (3, 4) and aip.shape == (3, 4)
    assert isinstance(sf.airy_ai(1.0), float)


def test_airy_value_dataclass():
    v = sf.airy_value(-1.0)
    assert v.ai == pytest.approx(mp_ai(-1.0)[0], abs=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.floats(-40, 12))
def test_airy_ode_residual(x):
    # Ai'' - x Ai = 0 with Ai'' taken from the series / asymptotic branch directly
    ai, _ = sf.airy_pair(x)
    second = sf.branch_second_derivative(x)
    assert abs(second - x * ai) < 1e-10 * max(1.0, abs(x)) ** 1.25


def test_wronskian_with_bi():
    # Ai Bi' - Ai' Bi = 1/pi, with Bi from mpmath as the independent partner
    for x in (-7.0, -2.5, 0.0, 1.5, 3.0):
        ai, aip = sf.airy_pair(x)
        bi, bip = float(mpmath.airybi(x)), float(mpmath.airybi(x, derivative=1))
        assert ai * bip - aip * bi == pytest.approx(1 / math.pi, rel=1e-11)


def test_branches_agree_at_switch_points():
    for x0 in sf.branch_switch_points():
        h = 1e-9
        ai, aip = sf.airy_pair(np.array([x0 - h, x0 + h]))
        # remove the first-order change across the gap, leaving the branch mismatch
        assert abs(ai[1] - ai[0] - 2 * h * aip[0]) < 1e-11
        assert abs(aip[1] - aip[0] - 2 * h * x0 * ai[0]) < 1e-11 * max(1, abs(x0))


def test_second_derivative_helper_uses_ode():
    x = np.array([-3.0, 0.5, 11.0])
    assert np.allclose(sf.airy_ai_second(x), x * sf.airy_ai(x), rtol=0, atol=0)


# -- Hermite functions

def test_hermite_orthonormality_gauss_hermite():
    # phi_j phi_k = H_j H_k e^{-x^2} / norms: use Gauss-Hermite with the weight removed
    n = 40
    x, w = hermgauss(80)
    phi = sf.hermite_wavefunctions(n, x)
    gram = (phi * (w * np.exp(x * x))[:, None]).T @ phi
    assert np.max(np.abs(gram - np.eye(n))) < 1e-12


def test_hermite_low_orders_closed_form():
    x = np.linspace(-3, 3, 13)
    phi = sf.hermite_wavefunctions(3, x)
    g = np.exp(-x * x / 2) / np.pi**0.25
    assert np.allclose(phi[:, 0], g, atol=1e-15)
    assert np.allclose(phi[:, 1], math.sqrt(2) * x * g, atol=1e-15)
    assert np.allclose(phi[:, 2], (2 * x * x - 1) / math.sqrt(2) * g, atol=1e-15)


def test_hermite_large_order_finite_at_edge():
    n = 4000
    x = np.array([math.sqrt(2 * n), math.sqrt(2 * n) + 5, 0.0, 200.0])
    prev, last = sf.hermite_pair(n, x)
    assert np.all(np.isfinite(prev)) and np.all(np.isfinite(last))
    # edge asymptotics: phi_n(sqrt(2n) + t / (sqrt2 n^{1/6})) ~ 2^{1/4} n^{-1/12} Ai(t), with O(n^{-2/3}) corrections
    assert last[0] == pytest.approx(2**0.25 * n ** (-1 / 12) * 0.3550280538878172, rel=4e-2)
    assert last[3] == 0.0


def test_hermite_against_mpmath():
    x = 1.7
    phi = sf.hermite_wavefunctions(31, np.array([x]))[0]
    for k in (0, 7, 30):
        ref = mpmath.hermite(k, x) * mpmath.exp(-x * x / 2) / mpmath.sqrt(mpmath.sqrt(mpmath.pi) * 2**k * mpmath.factorial(k))
        assert phi[k] == pytest.approx(float(ref), rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("n", [0, -1, 5001])
def test_hermite_order_bounds(n):
    with pytest.raises(ValueError):
        sf.hermite_wavefunctions(n, [0.0])


def test_right_tail_is_tiny():
    assert 0 < sf.airy_ai(50.0) < 1e-80


@pytest.mark.parametrize("x", [-50.0, -51.0])
def test_left_tail_envelope(x):
    assert abs(sf.airy_ai(x)) <= abs(x) ** -0.25


def test_derivative_matches_central_difference():
    h = 1e-5
    fd = (sf.airy_ai(2 + h) - sf.airy_ai(2 - h)) / (2 * h)
    assert abs(fd - sf.airy_ai_prime(2.0)) < 1e-8


def test_ode_residual_in_asymptotic_branch():
    x = -15.0
    assert abs(sf.branch_second_derivative(x) - x * sf.airy_ai(x)) < 1e-9


def test_hermite_ground_state_and_parity():
    assert sf.hermite_wavefunctions(1, [0.0])[0, 0] == pytest.approx(np.pi**-0.25, abs=1e-16)
    assert sf.hermite_wavefunctions(3, [0.0])[0, 1] == 0.0
    x = np.linspace(0.1, 4, 9)
    a, b = sf.hermite_wavefunctions(12, x), sf.hermite_wavefunctions(12, -x)
    sign = (-1.0) ** np.arange(12)
    assert np.allclose(b, a * sign, atol=1e-15)


def test_ode_residual_random_points():
    xs = np.random.default_rng(5).uniform(-30, 30, 200)
    ai = sf.airy_ai(xs)
    second = np.array([sf.branch_second_derivative(x) for x in xs])
    assert np.max(np.abs(second - xs * ai)) <= 1e-9


def test_decay_majorant():
    x = np.linspace(1, 60, 300)
    assert np.all(sf.airy_ai(x) <= np.exp(-x))


def test_hermite_recurrence_stable_at_2000():
    phi = sf.hermite_wavefunctions(2000, np.linspace(-80, 80, 161))
    assert np.all(np.isfinite(phi))
    assert np.max(np.abs(phi)) < 1.0
