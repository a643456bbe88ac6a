import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conewave.errors import ConvergenceError, DomainError, PoleError
from conewave.numerics import (
    ComplexParam,
    QuadratureRule,
    beta,
    gamma,
    hankel_symbol,
    integrate_1d,
    integrate_oscillatory,
    rgamma,
)

# Independent reference values (mpmath, 30 digits).
BETA_07_14 = 1.1005571964856793568
QUARTER_ARCSINE = 2.3962804694711844149  # ∫_{-1}^{1} (1-s²)^{-1/4} ds

strip = st.builds(
    complex,
    st.floats(0.05, 0.95),
    st.floats(-3.0, 3.0),
)


def test_complex_param_rejects_non_finite():
    with pytest.raises(DomainError):
        ComplexParam(float("nan"))
    with pytest.raises(DomainError):
        ComplexParam(1.0, float("inf"))


def test_checked_strip_constructor():
    assert ComplexParam.in_strip(0.5 + 1j, 0, 1).value == 0.5 + 1j
    with pytest.raises(DomainError):
        ComplexParam.in_strip(1.2, 0, 1)
    assert str(ComplexParam(0.6, -0.3)) == "0.6-0.3i"


def test_gamma_classical_values():
    assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma(1) == pytest.approx(1.0, rel=1e-15)
    z = 0.3 + 0.7j
    assert abs(gamma(z) * gamma(1 - z) * np.sin(np.pi * z) / np.pi - 1) < 1e-12


@pytest.mark.parametrize("z", [0, -1, -7, -3 + 1e-13])
def test_gamma_poles(z):
    with pytest.raises(PoleError):
        gamma(z)
    assert rgamma(z) == 0


@settings(max_examples=100, deadline=None)
@given(strip)
def test_gamma_reflection_property(z):
    assert abs(gamma(z) * gamma(1 - z) * np.sin(np.pi * z) / np.pi - 1) < 1e-11


@settings(max_examples=100, deadline=None)
@given(strip)
def test_gamma_recurrence_property(z):
    assert abs(gamma(z + 1) - z * gamma(z)) <= 1e-12 * abs(gamma(z + 1))


def test_beta_values():
    assert beta(1, 1) == pytest.approx(1.0, rel=1e-15)
    assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-14)
    assert beta(0.7, 1.4) == pytest.approx(BETA_07_14, rel=1e-13)
    with pytest.raises(DomainError):
        beta(0, 1)
    # large arguments go through log-gamma
    assert beta(25, 30) == pytest.approx(gamma(25) * gamma(30) / gamma(55), rel=1e-11)


def test_hankel_symbol():
    assert hankel_symbol(2.3 + 1j, 0) == 1
    assert hankel_symbol(0.5, 1) == 0
    assert hankel_symbol(0.5, 4) == 0
    assert hankel_symbol(1.5, 1) == pytest.approx(2.0, rel=1e-15)
    nu = 0.3 + 0.4j
    for m in range(1, 6):
        direct = gamma(0.5 + nu + m) / (math.factorial(m) * gamma(0.5 + nu - m))
        assert hankel_symbol(nu, m) == pytest.approx(direct, rel=1e-12)
    with pytest.raises(DomainError):
        hankel_symbol(1.0, -1)


def test_integrate_1d_basics():
    assert integrate_1d(lambda x: np.ones_like(x), (0, 1)).value == pytest.approx(1.0, abs=1e-15)
    assert integrate_1d(lambda x: x, (0, 1)).value == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(DomainError):
        integrate_1d(lambda x: x, (1, 0))


def test_integrate_1d_endpoint_weights():
    # (1-s²)^{-1/4} = (1+s)^{-1/4}(1-s)^{-1/4}: declare both endpoint factors
    res = integrate_1d(lambda s: np.ones_like(s), (-1, 1), QuadratureRule(abs_tol=1e-14, rel_tol=1e-13), (-0.25, -0.25))
    assert res.value == pytest.approx(QUARTER_ARCSINE, rel=1e-12)
    # a power close to -1 keeps full relative accuracy
    near = integrate_1d(lambda s: np.ones_like(s), (0, 1), QuadratureRule(abs_tol=1e-14, rel_tol=1e-13), (-0.99, 0))
    assert near.value == pytest.approx(100.0, rel=1e-11)
    with pytest.raises(DomainError):
        integrate_1d(lambda s: s, (0, 1), weight_powers=(-1.0, 0))


def test_integrate_1d_batched_integrand():
    k = np.array([1.0, 2.0, 3.0])
    vals = integrate_1d(lambda x: np.multiply.outer(k, x**2), (0, 1)).value
    assert np.allclose(vals, k / 3, rtol=1e-14)


def test_integrate_1d_raises_on_non_convergence():
    rule = QuadratureRule(panels=1, nodes_per_panel=2, max_refinements=1, abs_tol=1e-16, rel_tol=1e-16)
    with pytest.raises(ConvergenceError):
        integrate_1d(lambda x: np.sin(200 * x), (0, 1), rule)


def test_integrate_1d_deterministic():
    f = lambda x: np.exp(1j * x) / (1 + x * x)  # noqa: E731
    a = integrate_1d(f, (0, 5)).value
    b = integrate_1d(f, (0, 5)).value
    assert a == b


def test_oscillatory_plain_measure():
    box = lambda r: (np.abs(r) <= 1).astype(float)  # noqa: E731
    res = integrate_oscillatory(box, 0.0, 0.0, QuadratureRule(dyadic_range=(-40, 2)), check_tail=False)
    assert res.value == pytest.approx(2.0, abs=1e-10)


def test_oscillatory_gaussian_mass_and_transform():
    g = lambda r: np.exp(-np.pi * r * r)  # noqa: E731
    rule = QuadratureRule(abs_tol=1e-12, rel_tol=1e-11, dyadic_range=(-40, 4))
    assert integrate_oscillatory(g, 0.0, 0.0, rule).value == pytest.approx(1.0, abs=1e-10)
    assert integrate_oscillatory(g, 1.0, 0.0, rule, bandwidth=0.0).value == pytest.approx(math.exp(-math.pi), abs=1e-10)


def test_oscillatory_matches_plain_quadrature_at_zero_frequency():
    bump = lambda r: np.where(np.abs(r) < 1, np.exp(-1 / np.maximum(1e-300, 1 - r * r)), 0.0)  # noqa: E731
    osc = integrate_oscillatory(bump, 0.0, 0.0, QuadratureRule(dyadic_range=(-40, 1)), check_tail=False).value
    plain = integrate_1d(bump, (-1, 1), QuadratureRule(panels=16)).value
    assert osc == pytest.approx(plain, abs=1e-9)


def test_oscillatory_tail_check():
    slow = lambda r: 1.0 / (1 + r * r) ** 0.4  # noqa: E731
    with pytest.raises(ConvergenceError):
        integrate_oscillatory(slow, 0.0, 0.0, QuadratureRule(dyadic_range=(-10, 3)))


def test_rule_validation():
    with pytest.raises(DomainError):
        QuadratureRule(nodes_per_panel=1)
    with pytest.raises(DomainError):
        QuadratureRule(dyadic_range=(3, 1))
    with pytest.raises(DomainError):
        QuadratureRule(kind="simpson")
