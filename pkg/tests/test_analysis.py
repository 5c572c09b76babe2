import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hqrlab import analysis as an
from hqrlab.boundary import BoundarySignal, conjugate_signal, modulus_of_continuity
from hqrlab.catalog import make_abs_theta_boundary, make_holder_boundary, make_power_singularity
from hqrlab.errors import DomainError, FitError, PairingError
from hqrlab.means import RadialProfile, geometric_grid, radial_profile, series_subject
from hqrlab.series import derive_series

GRID = geometric_grid(1, 12)


def _power_profile(beta, c=2.0, p=2.0):
    return RadialProfile(p, GRID, c * (1 - GRID) ** -beta)


@given(st.floats(0.1, 3.0), st.floats(0.1, 10.0))
def test_growth_fit_recovers_exact_power(beta, c):
    fit = an.fit_growth_exponent(_power_profile(beta, c))
    assert fit.exponent_hat == pytest.approx(beta, abs=1e-9)
    assert fit.intercept_hat == pytest.approx(math.log(c), abs=1e-9)
    rec = fit.to_record()
    assert list(rec) == ["model", "exponent_hat", "intercept_hat", "stderr", "window_lo", "window_hi", "residual_max"]


def test_growth_example_power_singularity():
    s = make_power_singularity(1.0, 1 << 17)
    fit = an.fit_growth_exponent(radial_profile(series_subject(s), math.inf, GRID))
    assert fit.exponent_hat == pytest.approx(1.0, abs=0.02)


def test_log_power_fit_exact():
    vals = (3.0 * -np.log1p(-GRID) + 1.0) ** 2  # M_p^p with p = 1/2
    fit = an.fit_log_power(RadialProfile(0.5, GRID, vals))
    assert fit.exponent_hat == pytest.approx(3.0)
    with pytest.raises(DomainError):
        an.fit_log_power(RadialProfile(math.inf, GRID, vals))


def test_too_few_points():
    with pytest.raises(FitError):
        an.fit_growth_exponent(_power_profile(1.0), window=(0.999, 1.0))
    with pytest.raises(FitError):
        an.split_window(_power_profile(1.0), window=(0.99, 1.0))


def test_half_windows_and_stability():
    lo, hi = an.half_window_fits(an.fit_growth_exponent, _power_profile(0.7))
    assert lo.window[1] < hi.window[0]
    assert an.window_stable(lo.exponent_hat, hi.exponent_hat, 0.01)
    assert not an.window_stable(0.0, 0.3, 0.1)


def test_riesz_ratio_pairing():
    u = _power_profile(1.0)
    v = RadialProfile(2.0, GRID, 0.5 * u.values)
    assert an.riesz_ratio(u, v).sup_ratio == pytest.approx(0.5)
    with pytest.raises(PairingError):
        an.riesz_ratio(u, RadialProfile(1.0, GRID, u.values))
    with pytest.raises(PairingError):
        an.riesz_ratio(u, RadialProfile(2.0, GRID[:-1], u.values[:-1]))


def test_hl_gap_example():
    s = make_power_singularity(1.0, 1 << 17)
    base = an.fit_growth_exponent(radial_profile(series_subject(s), 2, GRID))
    deriv = an.fit_growth_exponent(radial_profile(series_subject(derive_series(s)), 2, GRID))
    assert an.hl_derivative_check(base, deriv) == pytest.approx(1.0, abs=0.1)
    bad = an.FitReport("power_growth", 1.0, 0.0, 0.5, (0.0, 1.0), 0.0)
    with pytest.raises(FitError):
        an.hl_derivative_check(bad, deriv)


def test_weighted_integral_of_constant():
    # With M_p constant the integral is (1 - (1-r_max)^p)/p.
    r = np.linspace(0.0, 0.99, 50)
    prof = RadialProfile(0.5, r, np.full(r.size, 4.0))
    assert an.weighted_radial_integral(prof) == pytest.approx(2.0 * (1 - 0.01**0.5) / 0.5)
    with pytest.raises(DomainError):
        an.weighted_radial_integral(RadialProfile(2, r, np.ones(r.size)))


@given(st.floats(0.1, 1.0))
def test_holder_fit_on_exact_power(alpha):
    deltas = np.geomspace(1e-3, 1e-1, 9)
    fit = an.fit_holder_exponent(list(zip(deltas, 3 * deltas**alpha)))
    assert fit.exponent_hat == pytest.approx(alpha, abs=1e-9)


def test_holder_fit_guards():
    d = np.geomspace(1e-2, 1e-1, 6)
    with pytest.raises(FitError):
        an.fit_holder_exponent(list(zip(d, d)))
    assert an.fit_holder_exponent(list(zip(d, d)), min_decades=1).exponent_hat == pytest.approx(1.0)
    wide = np.geomspace(1e-3, 1e-1, 6)
    const = an.fit_holder_exponent(list(zip(wide, np.zeros(6))))
    assert const.exponent_hat == 1.0 and "constant_signal" in const.flags
    with pytest.raises(DomainError):
        an.fit_holder_exponent(list(zip(wide, np.zeros(6))), log_correction=True)


def test_holder_boundary_exponent():
    s = make_holder_boundary(0.5, 1 << 14)
    fit = an.fit_holder_exponent(modulus_of_continuity(s, np.geomspace(1e-3, 1e-1, 9)))
    assert fit.exponent_hat == pytest.approx(0.5, abs=0.02)


def test_log_correction_closed_form_ratio():
    # Conjugate of |theta| is (2/pi) sum_{odd n} sin(n t)/n^2 -> omega(d)/d ~ (2/pi)(log(4/d)+1) near 0.
    def closed(d):
        return (2 / math.pi) * (math.log(4 / d) + 1)

    assert closed(1e-3) / closed(1e-1) == pytest.approx(1.98, abs=0.01)
    v = conjugate_signal(make_abs_theta_boundary(1 << 16))
    mv = modulus_of_continuity(v, [1e-3, 1e-1])
    ratio = (mv[0][1] / mv[0][0]) / (mv[1][1] / mv[1][0])
    assert 1.8 < ratio < 2.0


def test_holder_derivative_cos():
    M = 1 << 12
    u = BoundarySignal(np.cos(2 * np.pi * np.arange(M) / M))
    fit = an.holder_derivative_check(u, 1.0)
    assert abs(fit.exponent_hat) < 1e-3
    with pytest.raises(DomainError):
        an.holder_derivative_check(u, 0.0)


def test_polylog_local_slope_explains_slow_derivative_growth():
    # Exact local growth order of Li_alpha(1 - 2**-j): reaches 1 - alpha quickly
    # for alpha = 0.5 but only slowly for alpha = 0.8.
    mpmath = pytest.importorskip("mpmath")

    def slope(a, j):
        f = lambda jj: mpmath.polylog(a, 1 - mpmath.mpf(2) ** -jj)
        return float(mpmath.log(f(j + 1) / f(j)) / mpmath.log(2))

    assert slope(0.5, 12) == pytest.approx(0.5, abs=0.01)
    assert slope(0.8, 12) - 0.2 > 0.04
