"""Numerical toolkit for radial Fourier multipliers singular on the light cone and on the unit sphere."""

from .bessel import AUTO, POISSON, SERIES, BesselEvalRoute, asymptotic, bessel_j, bessel_scaled
from .cone import (
    ConePoint,
    CutoffSpec,
    lambda_hat_closed,
    lambda_hat_oscillatory,
    m_alpha,
    m_minus,
    m_plus,
    omega_kernel,
    p_hat,
    p_hat_closed,
)
from .errors import (
    ConeSingularityError,
    ConewaveError,
    ConvergenceError,
    DomainError,
    FieldFormatError,
    GridAliasError,
    PoleError,
)
from .numerics import ComplexParam, QuadratureRule, beta, gamma, integrate_1d, integrate_oscillatory, rgamma
from .operators import (
    GridMeta,
    MultiplierSpec,
    NormEstimate,
    SampledField,
    TestFunction,
    apply_multiplier,
    direct_quadrature_oracle,
    lp_norm,
    operator_norm_estimate,
)
from .radial import OmegaSpec, omega_hat, omega_hat_oracle_ball, omega_hat_series
from .report import VerificationReport

__version__ = "0.1.0"
