import math

import numpy as np
import pytest

from conewave.errors import DomainError
from conewave.numerics import gamma
from conewave.radial import (
    OmegaSpec,
    omega_hat,
    omega_hat_oracle_ball,
    omega_hat_series,
    omega_recurrence_residual,
    power_law_coefficient,
    power_law_ft_check,
    sphere_area,
    taylor_coefficients,
)

# Ball integrals evaluated independently with mpmath (30 digits).
BALL_REFERENCE = [
    (0.5, 2, 0.7, -0.432472416366089682),
    (0.25, 1, 0.7, -0.414305766308454013),
    (0.25 + 0.5j, 2, 1.5, 0.121020178026204161 - 0.123292277751911880j),
]

Z_GRID = (0.0, 0.25, 0.5, 0.75, 0.25 + 0.5j)
XI_GRID = (0.0, 0.3, 0.7, 1.5, 3.0)


def test_exact_values_at_origin():
    assert omega_hat(OmegaSpec(0, 1), 0.0) == pytest.approx(2.0, rel=1e-15)
    assert omega_hat_oracle_ball(OmegaSpec(0, 1), 0.0) == pytest.approx(2.0, rel=1e-12)
    assert omega_hat_oracle_ball(OmegaSpec(0.5, 1), 0.0) == pytest.approx(1.0, rel=1e-10)
    assert omega_hat_oracle_ball(OmegaSpec(0, 2), 0.0) == pytest.approx(math.pi, rel=1e-12)


def test_zero_of_the_interval_transform():
    # ∫_{-1}^{1} cos(πx) dx = 0
    assert abs(omega_hat(OmegaSpec(0, 1), 0.5)) < 1e-15
    assert abs(omega_hat_oracle_ball(OmegaSpec(0, 1), 0.5)) < 1e-12


@pytest.mark.parametrize("z,n,xi,expected", BALL_REFERENCE)
def test_against_independent_ball_integrals(z, n, xi, expected):
    spec = OmegaSpec(z, n)
    assert omega_hat(spec, xi) == pytest.approx(expected, rel=1e-12)
    assert omega_hat_oracle_ball(spec, xi) == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("z", Z_GRID)
def test_three_routes_agree(n, z):
    spec = OmegaSpec(z, n)
    for xi in XI_GRID:
        bessel_form = omega_hat(spec, xi)
        assert omega_hat_series(spec, xi) == pytest.approx(bessel_form, rel=1e-10, abs=1e-14)
        assert omega_hat_oracle_ball(spec, xi) == pytest.approx(bessel_form, rel=1e-6, abs=1e-14)


def test_real_for_real_order():
    vals = omega_hat(OmegaSpec(0.3, 2), np.linspace(0, 5, 50))
    assert np.max(np.abs(np.imag(vals))) == 0


def test_series_leading_term():
    for n in (1, 2):
        for z in (0.2, 0.4 + 0.3j, 1.7):
            lead = math.pi ** ((n - 1) / 2 - z) * gamma(0.5) / gamma(n / 2 + 1 - z)
            assert omega_hat_series(OmegaSpec(z, n), 0.0, 0) == pytest.approx(lead, rel=1e-14)


def test_series_overflow_guard():
    with pytest.raises(OverflowError):
        omega_hat_series(OmegaSpec(0.1, 1), 400.0)


def test_taylor_coefficients_three_derivations():
    for n in (1, 2):
        for z in Z_GRID:
            for k in range(11):
                c = taylor_coefficients(OmegaSpec(z, n), k)
                for key, v in c.items():
                    assert v == pytest.approx(c["series"], rel=1e-12), (n, z, k, key)
    assert "ball" in taylor_coefficients(OmegaSpec(0.1, 2), 3)


def test_recurrence_past_the_oracle_strip():
    xi = np.array([0.3, 0.7, 1.5, 3.0])
    for z in (1.0, 1.5 + 0.5j, 2.75):
        for n in (1, 2):
            spec = OmegaSpec(z, n)
            scale = np.abs(spec.order * np.asarray(omega_hat(spec, xi))) + 1.0
            assert np.all(omega_recurrence_residual(spec, xi) <= 1e-10 * scale)


def test_oracle_rejects_divergent_order():
    with pytest.raises(DomainError):
        omega_hat_oracle_ball(OmegaSpec(1.0, 1), 0.5)
    with pytest.raises(DomainError):
        OmegaSpec(0.2, 3)


def test_sphere_area():
    assert sphere_area(2) == pytest.approx(2.0, rel=1e-15)
    assert sphere_area(3) == pytest.approx(2 * math.pi, rel=1e-15)


def test_power_law_transform():
    assert power_law_coefficient(0.5, 1) == pytest.approx(1.0, rel=1e-15)
    for g, n, w in ((0.5, 1, 1.0), (0.3, 1, 1.0), (1.0, 2, 1.0), (0.4 + 0.3j, 1, 2.0)):
        rep = power_law_ft_check(g, n, w)
        assert rep.passed, rep.summary()
    with pytest.raises(DomainError):
        power_law_ft_check(1.2, 1)
