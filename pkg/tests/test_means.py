import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from hqrlab.catalog import make_cayley, make_constant_dilatation_qr, make_power_singularity
from hqrlab.errors import DomainError, EvaluationError
from hqrlab.means import (
    RadialProfile,
    callable_subject,
    default_samples,
    dense_grid,
    format_p,
    geometric_grid,
    hardy_norm_estimate,
    harmonic_subject,
    integral_mean,
    parse_p,
    radial_profile,
    radial_profiles,
    read_profile_csv,
    series_subject,
    write_profile_csv,
)
from hqrlab.series import AnalyticSeries


def test_parse_p():
    assert parse_p("1/2") == 0.5
    assert math.isinf(parse_p("inf"))
    assert parse_p(2) == 2.0
    for bad in (0, -1, "0"):
        with pytest.raises(DomainError):
            parse_p(bad)
    assert format_p(math.inf) == "inf"


def test_mean_value_property_for_poisson_kernel():
    prof = radial_profile(series_subject(make_cayley(1 << 16), "re"), 1, geometric_grid(1, 10))
    assert np.allclose(prof.values, 1.0, atol=1e-10)


def test_half_mean_against_adaptive_quadrature():
    s = make_cayley(1 << 12)
    r = 0.5
    exact = integrate.quad(
        lambda t: abs(((1 + r * np.exp(1j * t)) / (1 - r * np.exp(1j * t))).imag) ** 0.5, 0, 2 * np.pi, limit=200, points=[np.pi]
    )[0] / (2 * np.pi)
    # |v|**p has cusps at the zeros of v, so the error decays like M**-(1+p).
    got = radial_profile(series_subject(s, "im"), 0.5, [r], M=1 << 18).values[0]
    assert got == pytest.approx(exact**2, rel=2e-7)


@given(st.floats(0.0, 0.95))
def test_mean_of_linear_polynomial(r):
    s = AnalyticSeries([1.0, 1.0])
    assert integral_mean(np.asarray(s(r * np.exp(2j * np.pi * np.arange(64) / 64))), 2) == pytest.approx(math.sqrt(1 + r * r))


@given(st.lists(st.floats(-5, 5, allow_nan=False, allow_subnormal=False).filter(lambda x: x == 0 or abs(x) > 1e-100), min_size=1, max_size=50))
def test_means_increase_with_p(xs):
    w = np.asarray(xs)
    vals = [integral_mean(w, p) for p in (0.5, 1, 2, 4, math.inf)]
    assert all(a <= b * (1 + 1e-12) + 1e-300 for a, b in zip(vals, vals[1:]))


def test_analytic_means_increase_in_r():
    prof = radial_profile(series_subject(make_power_singularity(0.7, 1 << 14)), 1, geometric_grid(1, 9))
    assert np.all(np.diff(prof.values) > 0)
    est = hardy_norm_estimate(prof)
    assert est.monotone_tail and est.value == prof.values[-1]


def test_profiles_share_sweep_and_threads(monkeypatch):
    f = make_constant_dilatation_qr(make_power_singularity(1.0, 2048), 0.5)
    grid = geometric_grid(1, 8)
    serial = radial_profiles(harmonic_subject(f, "im"), ["1/2", 2, "inf"], grid)
    monkeypatch.setenv("HQR_THREADS", "4")
    threaded = radial_profiles(harmonic_subject(f, "im"), ["1/2", 2, "inf"], grid)
    assert set(serial) == {0.5, 2.0, math.inf}
    for p in serial:
        assert np.array_equal(serial[p].values, threaded[p].values)


def test_grids():
    g = geometric_grid(1, 12)
    assert g[0] == 0.5 and g[-1] == 1 - 2.0**-12
    d = dense_grid(1 - 2.0**-10)
    assert d[0] == 0 and d[-1] == pytest.approx(1 - 2.0**-10) and np.all(np.diff(d) > 0)
    assert default_samples(1000) == 4096 and default_samples(5000) == 1 << 15


def test_profile_validation():
    with pytest.raises(DomainError):
        RadialProfile(1, [0.5, 0.4], [1, 1])
    with pytest.raises(DomainError):
        radial_profile(series_subject(make_cayley(8)), 1, [0.5, 1.0])


def test_evaluation_error_wraps_failures():
    def bad(z):
        raise DomainError("boom")

    with pytest.raises(EvaluationError) as info:
        radial_profile(callable_subject(bad), 1, [0.5])
    assert info.value.r == 0.5


def test_profile_csv_roundtrip(tmp_path):
    prof = radial_profile(series_subject(make_cayley(256), "im", "v"), "1/2", geometric_grid(1, 5))
    path = tmp_path / "p.csv"
    write_profile_csv(prof, path)
    back = read_profile_csv(path)
    assert back.p == 0.5 and back.subject == "v"
    assert np.array_equal(back.values, prof.values)
