import math

import numpy as np
import pytest

from conewave.cone import (
    DEFAULT_CUTOFF,
    ConePoint,
    CutoffSpec,
    cone_rate_report,
    dyadic_bound_report,
    lambda_coefficient,
    lambda_formula_consistency,
    lambda_hat_closed,
    lambda_hat_oscillatory,
    m_alpha,
    m_minus,
    m_minus_integral,
    m_plus,
    m_plus_integral,
    main_term_total,
    marcinkiewicz_check,
    omega_kernel,
    p_hat,
    p_hat_closed,
    q_transform_parseval_check,
    sgn_power,
    squaring_identity_check,
    subtraction_coefficient,
    subtraction_identity_check,
)
from conewave.errors import ConeSingularityError, DomainError
from conewave.numerics import gamma, integrate_1d

# Λ̂^{3/4}(ξ=1, τ=2): mpmath evaluation of the closed constant; the default
# value was also reproduced by oscillatory quadrature of the defining integral.
LAMBDA_DEFAULT_075 = -0.0512761700800071681
LAMBDA_SHIFTED_075 = -0.0682657785477570012
PHI_AT_04 = 0.302940716034592975  # smooth-step profile at |ξ| = 0.4


# --- cut-off and one-sided powers -------------------------------------------------


def test_cutoff_plateau_support_and_profile():
    c = DEFAULT_CUTOFF
    assert c.phi(1.0) == 1.0 and c.phi(0.5) == 1.0 and c.phi(2.0) == 1.0
    assert c.phi(4.0) == 0.0 and c.phi(1 / 3) == 0.0 and c.phi(0.2) == 0.0
    assert c.phi(0.4) == pytest.approx(PHI_AT_04, rel=1e-13)
    assert c.psi(0.4) == pytest.approx(PHI_AT_04**2, rel=1e-13)
    xi = np.linspace(0, 4, 401)
    assert np.array_equal(np.asarray(c.psi(xi)), np.asarray(c.phi(xi)) ** 2)


def test_cutoff_validation():
    with pytest.raises(DomainError):
        CutoffSpec(0.5, 0.4, 2, 3)


def test_one_sided_powers():
    assert sgn_power(4.0, 0.5, "plus") == pytest.approx(2.0)
    assert sgn_power(-4.0, 0.5, "plus") == 0
    assert sgn_power(-4.0, 0.5, "minus") == pytest.approx(2.0)
    assert sgn_power(4.0, 0.5, "minus") == 0
    with pytest.raises(DomainError):
        sgn_power(1.0, 0.5, "both")


# --- closed form ---------------------------------------------------------------------


def test_closed_form_reference_values():
    p = ConePoint(1.0, 2.0)
    assert lambda_hat_closed(0.75, p) == pytest.approx(LAMBDA_DEFAULT_075, rel=1e-13)
    assert lambda_hat_closed(0.75, p, normalization="shifted") == pytest.approx(LAMBDA_SHIFTED_075, rel=1e-13)
    expected = -(math.pi ** -1.5) * gamma(0.75).real * math.sin(math.pi / 4) * 3 ** -0.75
    assert LAMBDA_SHIFTED_075 == pytest.approx(expected, rel=1e-15)


def test_side_selectors():
    alpha = 0.4
    out = lambda_hat_closed(alpha, ConePoint(2.0, 1.0))
    assert out.imag == 0
    assert out.real == pytest.approx(lambda_coefficient(alpha).real * 3**-alpha, rel=1e-14)
    # sin π(α - 1/2) = 0: nothing inside the cone
    assert lambda_hat_closed(0.5, ConePoint(1.0, 2.0)) == 0


def test_cone_guard_and_strip():
    with pytest.raises(ConeSingularityError):
        lambda_hat_closed(0.75, ConePoint(1.0, 1.0 + 1e-8))
    with pytest.raises(DomainError):
        lambda_hat_closed(1.2, ConePoint(1.0, 2.0))


# --- oscillatory representation ------------------------------------------------------------


@pytest.mark.parametrize("alpha,xi,tau", [(0.75, 1.0, 2.0), (0.6 + 0.3j, 0.8, 0.4), (0.95, 2.0, 0.7), (0.55, 0.5, 2.5)])
def test_oscillatory_matches_closed(alpha, xi, tau):
    p = ConePoint(xi, tau)
    closed = lambda_hat_closed(alpha, p)
    assert lambda_hat_oscillatory(alpha, p) == pytest.approx(closed, rel=1e-8)


def test_oscillatory_even_in_tau():
    a = lambda_hat_oscillatory(0.7, ConePoint(1.0, 1.6))
    b = lambda_hat_oscillatory(0.7, ConePoint(1.0, -1.6))
    assert a == pytest.approx(b, rel=1e-10)


def test_oscillatory_preconditions():
    with pytest.raises(DomainError):
        lambda_hat_oscillatory(0.4, ConePoint(1.0, 2.0))
    with pytest.raises(DomainError):
        lambda_hat_oscillatory(0.75, ConePoint(5.0, 2.0))


# --- dyadic bounds and rates -----------------------------------------------------------


def test_dyadic_bound_slope():
    rep = dyadic_bound_report(0.75, ConePoint(1.0, 1.5))
    assert rep.passed, rep.summary()
    assert rep.constants["slope"] == pytest.approx(-0.75, abs=0.1)
    assert all(math.isfinite(rep.constants[k]) for k in ("C_near", "C_far", "C_total"))


def test_main_term_finite_far_from_cone():
    assert math.isfinite(abs(main_term_total(0.75, ConePoint(1.0, 2.0))))


@pytest.mark.parametrize("side", ["inside", "outside"])
@pytest.mark.parametrize("alpha", [0.75, 0.6 + 0.3j, 0.3])
def test_cone_rate(alpha, side):
    rep = cone_rate_report(alpha, 1.0, side)
    assert rep.passed, rep.summary()


# --- ω kernel --------------------------------------------------------------------------------


def test_omega_kernel_values():
    assert omega_kernel(0.0) == 0.5
    assert omega_kernel(0.5) == pytest.approx(2 / math.pi**2 + 1j / math.pi, rel=1e-14)
    # both sides of the series/closed switch against ∫_0^1 e^{2πir(1-τ)} τ dτ
    for r in (0.0795, 0.0796, 0.0797, 3.3, -7.25):
        direct = integrate_1d(lambda t, r=r: np.exp(2j * np.pi * r * (1 - t)) * t, (0.0, 1.0)).value
        assert omega_kernel(r) == pytest.approx(direct, rel=1e-12)


def test_omega_kernel_decay():
    r = np.linspace(-100, 100, 20001)
    weighted = np.abs(omega_kernel(r)) * (1 + np.abs(r))
    assert np.isfinite(weighted.max()) and weighted.max() < 1
    assert 2 * math.pi * 100 * abs(omega_kernel(100.0)) == pytest.approx(1.0, abs=0.02)


# --- multipliers ---------------------------------------------------------------------------------


def test_m_plus_examples():
    assert m_plus(0.5, 0.6) == pytest.approx(0.8, rel=1e-14)
    assert m_plus(0.5, 1.2) == 0
    assert m_plus(0.75, 0.0) == 0
    with pytest.raises(DomainError):
        m_plus(1.0, 0.5)


def test_m_minus_examples():
    a = 0.3 + 0.2j
    assert m_minus(a, 1.0) == pytest.approx(0.5 / (1 - a), rel=1e-14)
    assert m_minus(0.5, 2.0) == pytest.approx(2 - math.sqrt(3), rel=1e-14)
    assert m_minus(0.5, 2.0) == pytest.approx(m_minus_integral(0.5, 2.0), rel=1e-12)
    assert m_minus(0.5, 3.5) == 0 and m_minus(0.5, 0.2) == 0


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.9, 0.35 + 0.4j])
def test_m_plus_matches_defining_integral(alpha):
    for xi in np.linspace(0.41, 0.98, 7):
        assert m_plus(alpha, xi) == pytest.approx(m_plus_integral(alpha, xi), rel=1e-9)


def test_m_alpha_side_selectors():
    a = 0.3
    inside = m_alpha(a, 0.7)
    assert inside == pytest.approx(-math.sin(math.pi * (a - 0.5)) * (1 - 0.49) ** (1 - a), rel=1e-14)
    outside = m_alpha(a, 1.5)
    assert outside == pytest.approx(-((1.5**2 - 1) ** (1 - a)), rel=1e-14)
    assert m_alpha(0.5, 0.7) == 0


def test_p_hat_examples():
    assert p_hat(0.5, 3.2) == 0
    for a in (0.3, 0.75, 0.6 + 0.3j):
        for xi in (0.4, 0.6, 0.9, 1.5, 2.5):
            assert p_hat(a, xi) == pytest.approx(p_hat_closed(a, xi), rel=1e-8)
    # beyond the sphere the (·)_+ part has no support
    a, xi = 0.7, 1.5
    assert m_plus(a, xi) == 0 and m_minus(a, xi) != 0


def test_p_hat_matches_in_both_normalizations():
    for norm in ("lambda", "shifted"):
        assert p_hat(0.6, 1.3, normalization=norm) == pytest.approx(p_hat_closed(0.6, 1.3, normalization=norm), rel=1e-9)


# --- algebra -----------------------------------------------------------------------------------------

XI = np.linspace(0.0, 3.5, 500)


@pytest.mark.parametrize("alpha", [0.2, 0.45, 0.5, 0.8, 0.6 + 0.3j])
def test_squaring_and_subtraction_identities(alpha):
    assert squaring_identity_check(alpha, XI).passed
    rep = subtraction_identity_check(alpha, XI)
    assert rep.passed and rep.constants["coefficient_min_on_strip"] > 0


def test_subtraction_coefficient_at_half():
    assert subtraction_coefficient(0.5) == 0.5
    for a in (0.2, 0.8, 0.6 + 0.3j):
        direct = np.sin(np.pi * a / 2) ** 2 - np.sin(np.pi * (a - 0.5))
        assert subtraction_coefficient(a) == pytest.approx(direct, rel=1e-14)


def test_marcinkiewicz():
    rep = marcinkiewicz_check(0.25)
    assert rep.passed, rep.summary()
    assert rep.constants["sup_gamma_0"] <= 1 + 1e-12
    with pytest.raises(DomainError):
        marcinkiewicz_check(0.7)


# --- quadratic-form transform and coefficient identity ------------------------------------------------


@pytest.mark.parametrize(
    "sigma,z,w", [(0.3, 1 + 1j, 2 + 0.5j), (0.5, 1 + 0.2j, 1 + 0.2j), (0.4 + 0.2j, 1 - 1j, 2 - 0.5j)]
)
def test_q_transform_pairing(sigma, z, w):
    assert q_transform_parseval_check(sigma, z, w).passed


def test_q_transform_preconditions():
    with pytest.raises(DomainError):
        q_transform_parseval_check(0.3, 1 + 1j, 1 - 1j)
    with pytest.raises(DomainError):
        q_transform_parseval_check(1.3, 1 + 1j, 1 + 1j)


def test_lambda_formula_consistency():
    rep = lambda_formula_consistency(0.5, 1)
    assert rep.passed
    assert rep.constants["value_re"] == pytest.approx(math.pi**-0.5, rel=1e-14)
    for n in (1, 2):
        for a in (0.3, 0.75, 0.6 + 0.3j):
            assert lambda_formula_consistency(a, n).passed
