import math

import numpy as np
import pytest
from scipy import integrate

from airydet import detasym, rmt_mc, symbols
from airydet.kernels import edge_scale


def test_spectrum_deterministic_and_sorted():
    a = rmt_mc.sample_gue_spectrum(50, 9, 3)
    b = rmt_mc.sample_gue_spectrum(50, 9, 3)
    assert np.array_equal(a, b)
    assert np.all(np.diff(a) >= 0)
    assert not np.array_equal(a, rmt_mc.sample_gue_spectrum(50, 9, 4))


def test_spectrum_regression():
    sp = rmt_mc.sample_gue_spectrum(10, 123)
    assert sp[-1] == pytest.approx(3.119030641359973, abs=1e-12)
    assert sp[0] == pytest.approx(-4.074050011153447, abs=1e-12)


@pytest.mark.parametrize("n", [1, 10_001])
def test_size_bounds(n):
    with pytest.raises(ValueError):
        rmt_mc.sample_gue_spectrum(n, 0)


def test_two_by_two_largest_eigenvalue():
    # joint density proportional to (x - y)^2 exp(-x^2 - y^2), integrated directly
    dens = lambda y, x: (x - y) ** 2 * math.exp(-x * x - y * y)
    z, _ = integrate.dblquad(dens, -9, 9, -9, 9, epsabs=1e-12)
    m, _ = integrate.dblquad(lambda y, x: max(x, y) * dens(y, x), -9, 9, -9, 9, epsabs=1e-12)
    oracle = m / z
    draws = np.array([rmt_mc.sample_gue_spectrum(2, 77, i)[-1] for i in range(100_000)])
    se = draws.std() / math.sqrt(draws.size)
    assert abs(draws.mean() - oracle) <= 3 * se


def test_semicircle_central_mass():
    n = 1000
    lam = rmt_mc.sample_gue_spectrum(n, 2024)
    half = math.sqrt(2 * n) / 2
    frac = np.mean(np.abs(lam) < half)
    exact = 1 / 3 + math.sqrt(3) / (2 * math.pi)
    assert abs(frac - exact) <= 0.01


def test_rescale_is_affine():
    n = 100
    c = math.sqrt(2 * n)
    assert rmt_mc.edge_rescale(np.array([c]), n).rescaled[0] == 0.0
    lam = rmt_mc.sample_gue_spectrum(n, 1)
    h = 0.75
    a = rmt_mc.edge_rescale(lam, n).rescaled
    b = rmt_mc.edge_rescale(lam + h / edge_scale(n), n).rescaled
    assert np.allclose(b, a + h, atol=1e-12)
    assert np.all(np.diff(a) <= 0)


def test_linear_statistic_trivial_cases():
    sample = rmt_mc.edge_rescale(rmt_mc.sample_gue_spectrum(200, 3), 200)
    assert rmt_mc.linear_statistic(sample, symbols.zero(), 2.0) == 0.0
    one = symbols.make_symbol(np.ones_like, 5.0, "flat")
    assert rmt_mc.linear_statistic(sample, one, 1.0) <= 200
    with pytest.raises(ValueError):
        rmt_mc.linear_statistic(sample, symbols.gauss(0.2), 0.0)


def test_truncation_is_negligible():
    f = symbols.shifted_gauss(0.25)
    sample = rmt_mc.edge_rescale(rmt_mc.sample_gue_spectrum(300, 8), 300)
    full = float(np.sum(f(sample.rescaled / 2.0)))
    assert abs(rmt_mc.linear_statistic(sample, f, 2.0) - full) <= 300 * 1e-12


def test_zero_symbol_moments_exact():
    s = rmt_mc.run_mc(symbols.zero(), 2.0, 50, 100, 1)
    assert s.mean == 0.0 and s.variance == 0.0


def test_run_mc_needs_enough_samples():
    with pytest.raises(ValueError):
        rmt_mc.run_mc(symbols.gauss(0.2), 2.0, 50, 99, 1)


def test_thread_count_does_not_change_results(monkeypatch):
    f = symbols.shifted_gauss(0.25)
    one = rmt_mc.edge_statistics(f, [2.0, 4.0], 120, 150, 5, threads=1)
    four = rmt_mc.edge_statistics(f, [2.0, 4.0], 120, 150, 5, threads=4)
    assert np.array_equal(one, four)
    monkeypatch.setenv(rmt_mc.THREADS_ENV, "3")
    assert np.array_equal(one, rmt_mc.edge_statistics(f, [2.0, 4.0], 120, 150, 5))


def test_run_mc_bitwise_repeatable():
    f = symbols.shifted_gauss(0.25)
    assert rmt_mc.run_mc(f, 2.0, 100, 120, 42) == rmt_mc.run_mc(f, 2.0, 100, 120, 42)


def test_mc_regression_small():
    st = rmt_mc.edge_statistics(symbols.shifted_gauss(0.25), [2.0], 400, 200, 11)
    assert st.mean() == pytest.approx(0.3499393862051106, abs=1e-12)
    assert st.var() == pytest.approx(0.007350057871915314, abs=1e-12)


@pytest.fixture(scope="module")
def edge_run():
    """2000 draws at N = 400: top rescaled eigenvalue and statistics at alpha = 2, 4."""
    f = symbols.shifted_gauss(0.25)
    g = symbols.gauss_plus_tail(0.25, 1.0, 0.5)
    n, m = 400, 2000
    top = np.empty(m)
    stats = np.empty((m, 3))
    for i in range(m):
        s = rmt_mc.edge_rescale(rmt_mc.sample_gue_spectrum(n, 31337, i), n)
        top[i] = s.rescaled[0]
        stats[i] = [rmt_mc.linear_statistic(s, f, 2.0), rmt_mc.linear_statistic(s, f, 4.0),
                    rmt_mc.linear_statistic(s, g, 2.0)]
    return f, top, stats


def test_top_eigenvalue_location(edge_run):
    _, top, _ = edge_run
    assert abs(top.mean()) <= 3
    # the limiting law of the top eigenvalue has mean about -1.77; loose regression on the mass window
    assert np.mean((top >= -5) & (top <= 3)) >= 0.995
    assert -2.2 < top.mean() < -1.4


def test_mean_scales_like_alpha_three_halves(edge_run):
    _, _, stats = edge_run
    ratio = stats[:, 1].mean() / stats[:, 0].mean()
    assert 2**1.5 * 0.85 <= ratio <= 2**1.5 * 1.15


def test_variance_roughly_alpha_independent(edge_run):
    _, _, stats = edge_run
    v2, v4 = stats[:, 0].var(), stats[:, 1].var()
    assert abs(v4 / v2 - 1) <= 0.25


def test_positive_side_does_not_matter(edge_run):
    # the tail symbol adds mass only for x > 0, where the rescaled spectrum rarely is
    _, _, stats = edge_run
    diff = stats[:, 2] - stats[:, 0]
    se = stats[:, 0].std() / math.sqrt(stats.shape[0])
    assert abs(diff.mean()) <= 3 * se


def test_summary_fields():
    v = np.array([1.0, 2.0, 3.0, 4.0])
    s = rmt_mc.summarize(v, 2.5, 1.0)
    assert s.variance == pytest.approx(1.25)
    assert s.std_err_mean == pytest.approx(math.sqrt(1.25 / 4))
    assert s.skewness == pytest.approx(0.0, abs=1e-15)


# -- characteristic function

def test_char_fn_at_zero():
    assert rmt_mc.char_function_det(symbols.gauss(0.25), 0.0, 4.0) == 1 + 0j


def test_char_fn_conjugate_symmetry():
    f = symbols.shifted_gauss(0.25)
    a = rmt_mc.char_function_det(f, 0.4, 4.0)
    b = rmt_mc.char_function_det(f, -0.4, 4.0)
    assert abs(a - b.conjugate()) <= 1e-12


def test_char_fn_precondition():
    with pytest.raises(ValueError):
        rmt_mc.char_function_det(symbols.gauss(0.5), 3.2, 4.0)


def test_char_fn_matches_gaussian_form():
    f = symbols.shifted_gauss(0.25)
    lp = rmt_mc.char_function_log(f, 0.5, 8.0)
    assert abs(lp - rmt_mc.gaussian_log_char(f, 0.5, 8.0)) <= 0.05


def test_char_fn_second_order_is_variance():
    # log phi(s) = i s mean_alpha - s^2 var_alpha / 2 + O(s^3) with the finite-alpha moments
    # of the determinantal process; at large alpha var_alpha approaches the edge variance
    f = symbols.shifted_gauss(0.25)
    s = 1e-3
    lp, lm = rmt_mc.char_function_log(f, s, 16.0), rmt_mc.char_function_log(f, -s, 16.0)
    var = -(lp + lm).real / s**2
    assert var == pytest.approx(detasym.edge_variance(f), rel=2e-2)
