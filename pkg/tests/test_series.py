from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from hqrlab.catalog import make_constant_dilatation_qr, make_power_singularity
from hqrlab.errors import CriticalPointError, DomainError, NotQuasiregularError
from hqrlab.series import (
    AnalyticSeries,
    HarmonicMap,
    analytic_completion,
    check_sense_preserving,
    derive_series,
    dilatation,
    distortion_from_k,
    eval_on_circle,
    eval_on_unit_circle,
    eval_series,
    integrate_series,
    k_from_distortion,
    multiply_series,
    qr_constants,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
coeff_arrays = arrays(np.float64, st.integers(1, 40), elements=finite)


def test_geometric_series_value_and_exact_tail():
    # 1/(1-z) at z = 1/2 is 2; the truncation error is exactly 2**-N.
    N = 60
    s = AnalyticSeries(np.ones(N + 1))
    partial = sum(Fraction(1, 2**n) for n in range(N + 1))
    assert Fraction(2) - partial == Fraction(1, 2**N)
    assert eval_series(s, 0.5) == pytest.approx(float(partial), rel=1e-15)


def test_horner_rejects_outside_disk():
    s = AnalyticSeries([1.0, 1.0])
    with pytest.raises(DomainError):
        eval_series(s, 1.0)
    with pytest.raises(DomainError):
        eval_series(s, np.array([0.1, 1.2j]))
    with pytest.raises(DomainError):
        eval_on_circle(s, 1.0, 16)


def test_circle_fft_matches_horner_with_folding():
    rng = np.random.default_rng(0)
    s = AnalyticSeries(rng.standard_normal(200) + 1j * rng.standard_normal(200))
    for M in (16, 64, 512):  # M < N+1 exercises folding
        z = 0.9 * np.exp(2j * np.pi * np.arange(M) / M)
        assert np.allclose(eval_on_circle(s, 0.9, M), eval_series(s, z), rtol=0, atol=1e-10)


def test_unit_circle_of_polynomial():
    s = AnalyticSeries([0, 1, 0, 2])
    w = eval_on_unit_circle(s, 8)
    t = 2 * np.pi * np.arange(8) / 8
    assert np.allclose(w, np.exp(1j * t) + 2 * np.exp(3j * t))


@given(coeff_arrays)
def test_derive_integrate_roundtrip(c):
    s = AnalyticSeries(c)
    back = derive_series(integrate_series(s))
    assert np.allclose(back.coeffs, s.coeffs)


@given(coeff_arrays, coeff_arrays)
def test_product_matches_pointwise(a, b):
    sa, sb = AnalyticSeries(a), AnalyticSeries(b)
    prod = multiply_series(sa, sb, N=sa.N + sb.N)
    z = 0.3 + 0.2j
    assert prod(z) == pytest.approx(sa(z) * sb(z), rel=1e-9, abs=1e-9)


def test_series_is_immutable_and_hashable():
    s = AnalyticSeries([1, 2])
    with pytest.raises(ValueError):
        s.coeffs[0] = 5
    assert hash(s) == hash(AnalyticSeries([1, 2]))
    assert (s + s) == 2 * s


def test_harmonic_map_requires_g0_zero():
    with pytest.raises(DomainError):
        HarmonicMap(AnalyticSeries([0, 1]), AnalyticSeries([1, 1]))


def test_constant_dilatation_and_K():
    h = make_power_singularity(1.0, 64)
    f = make_constant_dilatation_qr(h, 0.5)
    assert dilatation(f, 0.3 + 0.1j) == pytest.approx(0.5)
    rep = qr_constants(f, [0.5, 0.9])
    assert rep.k_hat == pytest.approx(0.5)
    assert rep.K_hat == pytest.approx(3.0)


@given(st.floats(0, 0.999))
def test_distortion_inverse(k):
    assert k_from_distortion(distortion_from_k(k)) == pytest.approx(k)


def test_critical_point_and_not_qr():
    f = HarmonicMap(AnalyticSeries([0, 0, 1]), AnalyticSeries([0, 0.5]))
    with pytest.raises(CriticalPointError):
        dilatation(f, 0.0)
    g = HarmonicMap(AnalyticSeries([0, 1]), AnalyticSeries([0, 2]))
    with pytest.raises(NotQuasiregularError):
        qr_constants(g, [0.5])
    with pytest.raises(NotQuasiregularError):
        check_sense_preserving(g, 0.5)
    with pytest.raises(DomainError):
        qr_constants(g, [0.5], n_theta=16)


@given(coeff_arrays)
def test_analytic_completion_has_real_part_u(c):
    h = AnalyticSeries(c)
    g = AnalyticSeries(np.concatenate([[0.0], c[1:] * 0.3]))
    f = HarmonicMap(h, g)
    z = 0.4 - 0.3j
    assert analytic_completion(f)(z).real == pytest.approx(f(z).real, abs=1e-9)
