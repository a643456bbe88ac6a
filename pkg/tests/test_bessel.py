import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conewave.bessel import (
    AUTO,
    CROSSOVER,
    POISSON,
    SERIES,
    BesselEvalRoute,
    asymptotic,
    asymptotic_coefficients,
    asymptotic_remainder,
    bessel_j,
    bessel_scaled,
    norm_envelope,
    recurrence_residual,
)
from conewave.errors import DomainError
from conewave.numerics import rgamma

# J_ν(ρ) reference values from mpmath.besselj at 30 digits.
MPMATH_J = [
    (0.3 + 1.0j, 5.0, -0.739567680429173216 - 0.361311689833001533j),
    (1.0 + 0.5j, 30.0, -0.155148924349201161 + 0.0718554034064569631j),
    (-0.35 + 2.0j, 12.5, 2.45127173893765832 - 1.23620547199262939j),
    (4.5 - 3.0j, 0.75, -0.0000387363173835120224 + 0.000529507111314272396j),
    (-2.0, 3.3, 0.478031686450545912),
]


@pytest.mark.parametrize("nu,rho,expected", MPMATH_J)
def test_auto_route_matches_reference(nu, rho, expected):
    assert abs(bessel_j(nu, rho) - expected) <= 1e-12 * abs(expected)


def test_closed_half_integer_values():
    assert abs(bessel_j(0.5, math.pi)) < 1e-15
    assert bessel_j(0.5, math.pi / 2).real == pytest.approx(2 / math.pi, rel=1e-14)
    assert bessel_j(0, 0.0, SERIES) == 1
    assert bessel_j(0, 1e-12, SERIES) == pytest.approx(1.0, abs=1e-20)


def test_scaled_examples():
    assert bessel_scaled(0, 2.7) == bessel_j(0, 2.7)
    assert bessel_scaled(0.5, math.pi / 2).real == pytest.approx((math.pi / 2) ** -0.5 * 2 / math.pi, rel=1e-14)
    nu = 0.3 + 1.0j
    assert abs(bessel_scaled(nu, 5.0, POISSON) - bessel_scaled(nu, 5.0, SERIES)) < 1e-9 * abs(bessel_scaled(nu, 5.0))


def test_scaled_limit_at_zero():
    # ρ^{-ν} J_ν(ρ) → 2^{-ν}/Γ(ν+1)
    nu = 0.7 + 0.2j
    expected = 2 ** (-nu) * rgamma(nu + 1)
    assert bessel_scaled(nu, 0.0) == pytest.approx(expected, rel=1e-14)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(-0.4, 5.0),
    st.floats(-3.0, 3.0),
    st.floats(0.01, 20.0),
)
def test_poisson_and_series_routes_agree(a, b, rho):
    nu = complex(a, b)
    p = bessel_j(nu, rho, POISSON)
    s = bessel_j(nu, rho, SERIES)
    assert abs(p - s) <= 1e-9 * max(abs(s), 1e-300) + 1e-300


def test_vectorized_matches_scalar():
    rho = np.array([0.5, 3.0, 9.0, 25.0, 60.0])
    vec = bessel_j(1.2 - 0.4j, rho)
    # batched quadrature refines jointly, so agreement is to rounding, not bitwise
    for r, v in zip(rho, vec):
        assert v == pytest.approx(bessel_j(1.2 - 0.4j, float(r)), rel=1e-14)


def test_route_preconditions():
    with pytest.raises(DomainError):
        bessel_j(-0.7, 2.0, POISSON)
    with pytest.raises(DomainError):
        bessel_j(1.0, 2.0, asymptotic(2))
    with pytest.raises(DomainError):
        BesselEvalRoute("asymptotic")
    with pytest.raises(DomainError):
        bessel_j(1.0, -1.0)


def test_asymptotic_route_is_close_above_crossover():
    nu = 1.0 + 0.5j
    exact = MPMATH_J[1][2]
    assert abs(bessel_j(nu, 30.0, asymptotic(3)) - exact) < 1e-8


def test_asymptotic_coefficients_leading_terms():
    c = asymptotic_coefficients(0, 2)
    assert c.a[0] == 1 and c.b[0] == 0
    # J_0(ρ) ~ sqrt(2/(πρ)) [cos χ (1 - 9/(128ρ²)) + sin χ / (8ρ) ...]
    assert c.b[1] == pytest.approx(1 / 8, rel=1e-15)
    assert c.a[1] == pytest.approx(-9 / 128, rel=1e-15)


def test_half_integer_expansion_terminates():
    c = asymptotic_coefficients(0.5, 4)
    assert np.all(c.a[1:] == 0)
    assert np.all(c.b[1:] == 0)
    rho = np.linspace(CROSSOVER, 100, 50)
    for N in (1, 2, 3):
        assert np.max(asymptotic_remainder(0.5, rho, N)) < 1e-12
    assert asymptotic_remainder(0.5, 50.0, 1) < 1e-12


@pytest.mark.parametrize("nu", [0.0, 1.0 + 0.5j, 2.3])
def test_remainder_envelope_bounded(nu):
    rho = np.linspace(CROSSOVER, 100, 120)
    for N in (0, 1, 2):
        env = asymptotic_remainder(nu, rho, N) * rho ** (2 * N + 0.5)
        assert np.all(np.isfinite(env))
        # the scaled remainder does not grow across the sweep
        assert env[-20:].max() <= 2 * env[:20].max() + 1e-12


def test_remainder_requires_crossover():
    with pytest.raises(DomainError):
        asymptotic_remainder(0, 5.0, 1)


@pytest.mark.parametrize("nu,rho", [(1, 1), (0.5 + 1j, 3), (2, 10), (-0.3 - 2j, 17.0)])
def test_recurrence_residual(nu, rho):
    assert recurrence_residual(nu, rho) <= 1e-8 * max(1.0, abs(bessel_j(nu, rho)))


def test_norm_envelope_is_finite_and_stable():
    near = norm_envelope(1.0 + 1.0j, np.linspace(1e-3, 200, 2000))
    far = norm_envelope(1.0 + 1.0j, np.linspace(200, 2000, 4000))
    assert math.isfinite(near) and far <= 1.05 * near


def test_deterministic():
    assert bessel_j(0.3 + 0.2j, 7.7, AUTO) == bessel_j(0.3 + 0.2j, 7.7, AUTO)
