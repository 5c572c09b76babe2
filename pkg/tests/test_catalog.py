import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import binom

from hqrlab.catalog import (
    build_example,
    cayley_tail_bound,
    catalog_listing,
    make_cayley,
    make_constant_dilatation_qr,
    make_holder_boundary,
    make_linear_dilatation_qr,
    make_power_singularity,
    parse_example,
    power_singularity_tail_bound,
)
from hqrlab.boundary import BoundarySignal
from hqrlab.errors import DomainError, NotQuasiregularError
from hqrlab.series import HarmonicMap, dilatation, eval_series


@given(st.floats(0.1, 3.0))
def test_power_singularity_coefficients(beta):
    s = make_power_singularity(beta, 30)
    n = np.arange(31)
    assert np.allclose(s.coeffs.real, binom(n + beta - 1, n), rtol=1e-10)


@given(st.floats(0.2, 2.0), st.floats(0.1, 0.9))
def test_power_singularity_tail_bound_holds(beta, r):
    N = 200
    exact = (1 - r) ** -beta
    partial = eval_series(make_power_singularity(beta, N), r).real
    slack = 1e-14 * exact
    assert -slack <= exact - partial <= power_singularity_tail_bound(beta, N, r) * (1 + 1e-9) + slack


def test_cayley_value_and_tail():
    z = 0.3 + 0.4j
    N = 400
    assert abs(make_cayley(N)(z) - (1 + z) / (1 - z)) <= cayley_tail_bound(N, abs(z))


def test_qr_constructions():
    h = make_power_singularity(1.0, 64)
    f = make_constant_dilatation_qr(h, 0.3)
    assert f.g.coeffs[0] == 0
    g = make_linear_dilatation_qr(h, 0.6)
    z = 0.5 - 0.2j
    assert dilatation(g, z) == pytest.approx(0.6 * z)
    with pytest.raises(NotQuasiregularError):
        make_constant_dilatation_qr(h, 1.0)
    with pytest.raises(DomainError):
        make_constant_dilatation_qr(h, -0.1)
    with pytest.raises(DomainError):
        make_power_singularity(0.0)


def test_holder_boundary_is_even_and_peaks_at_pi():
    s = make_holder_boundary(0.5, 64)
    v = s.values
    assert v[0] == 0 and np.array_equal(v[1:], v[1:][::-1])
    assert v[32] == pytest.approx(math.pi**0.5)


def test_parse_and_build():
    spec = parse_example("const_dilatation:k=0.5,h=power_singularity,beta=1", N=128)
    f = build_example(spec)
    assert isinstance(f, HarmonicMap) and f.h.N == 128
    assert isinstance(build_example(parse_example("holder:alpha=0.3", M=256)), BoundarySignal)
    assert str(parse_example("cayley")) == "cayley"
    for bad in ("nope", "holder", "holder:alpha", "const_dilatation:k=0.5,h=abs_theta", "holder:alpha=x"):
        with pytest.raises(DomainError):
            build_example(parse_example(bad))


def test_listing_names_every_family():
    text = catalog_listing()
    for name in ("power_singularity", "cayley", "const_dilatation", "abs_theta", "holder"):
        assert name in text
