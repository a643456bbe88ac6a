"""Named verification checks grouped into suites.

Every check is a function of ``(tolerance, seed)`` returning one
:class:`VerificationReport`.  Checks are registered with a default tolerance
under a stable formula id; ``run_suite`` evaluates a suite in registration
order, optionally with per-id tolerance overrides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Mapping

import numpy as np

from . import bessel, cone, operators, radial
from ._parallel import pmap
from .cone import ConePoint
from .errors import ConewaveError
from .numerics import QuadratureRule, beta, gamma, integrate_1d
from .radial import OmegaSpec
from .report import VerificationReport

__all__ = ["Check", "SUITES", "CHECKS", "DEFAULT_SEED", "checks_for", "run_suite", "formula_ids", "load_bundled_field", "GOLDEN_DELTA"]

DEFAULT_SEED = 0x5EED
SUITES = ("bessel", "radial", "lambda", "multiplier-algebra", "appendix-b", "operators")
GOLDEN_DELTA = 0.25


@dataclass(frozen=True)
class Check:
    formula_id: str
    suite: str
    tolerance: float
    run: Callable[[float, int], VerificationReport]
    description: str


CHECKS: list[Check] = []


def _check(formula_id: str, suite: str, tolerance: float, description: str):
    def register(fn):
        CHECKS.append(Check(formula_id, suite, tolerance, fn, description))
        return fn

    return register


def _bound(formula_id: str, excess, tolerance: float, constants=None) -> VerificationReport:
    """Report for an inequality: ``excess`` is how far each point overshoots its bound."""
    e = np.atleast_1d(np.maximum(0.0, np.asarray(excess, dtype=float)))
    return VerificationReport.compare(formula_id, e, np.zeros_like(e), tolerance, constants, relative=False)


def _strip_sample(rng: np.random.Generator, count: int, re_lo: float, re_hi: float, im_max: float) -> np.ndarray:
    return rng.uniform(re_lo, re_hi, count) + 1j * rng.uniform(-im_max, im_max, count)


# --- bessel --------------------------------------------------------------------------


@_check("bessel_cross_route", "bessel", 1e-9, "Poisson integral vs power series for J_ν on 200 random (ν, ρ)")
def _bessel_cross_route(tol, seed):
    rng = np.random.default_rng(seed)
    nus = _strip_sample(rng, 200, -0.4, 5.0, 3.0)
    rhos = rng.uniform(1e-3, 20.0, 200)

    def both(k):
        return bessel.bessel_j(nus[k], rhos[k], bessel.POISSON), bessel.bessel_j(nus[k], rhos[k], bessel.SERIES)

    pairs = pmap(both, range(200))
    return VerificationReport.compare("bessel_cross_route", [p[0] for p in pairs], [p[1] for p in pairs], tol)


@_check("j_asymptotic", "bessel", 1e-12, "asymptotic remainder envelopes; exact termination at ν = 1/2")
def _j_asymptotic(tol, seed):
    rho = np.linspace(bessel.CROSSOVER, 100.0, 171)
    constants = {}
    for label, nu in (("nu0", 0.0), ("nu1", 1.0), ("nu_c", 1.5 + 0.5j)):
        for N in (0, 1, 2):
            env = float(np.max(bessel.asymptotic_remainder(nu, rho, N) * rho ** (2 * N + 0.5)))
            constants[f"envelope_{label}_N{N}"] = env
    half = np.concatenate([bessel.asymptotic_remainder(0.5, rho, N) for N in (1, 2)])
    rep = VerificationReport.compare("j_asymptotic", half, np.zeros_like(half), tol, constants, relative=False)
    if not all(math.isfinite(v) for v in constants.values()):
        rep = VerificationReport(rep.formula_id, rep.points, rep.max_abs_err, math.inf, tol, False, rep.constants)
    return rep


@_check("j_identity", "bessel", 1e-8, "three-term recurrence residual on 100 random (ν, ρ)")
def _j_identity(tol, seed):
    rng = np.random.default_rng(seed + 1)
    nus = _strip_sample(rng, 100, -0.4, 5.0, 3.0)
    rhos = rng.uniform(0.05, 30.0, 100)
    res = np.array(pmap(lambda k: bessel.recurrence_residual(nus[k], rhos[k]), range(100)))
    return VerificationReport.compare("j_identity", res, np.zeros_like(res), tol, relative=False)


@_check("j_norm", "bessel", 0.05, "decay envelope |ρ^{-ν}J_ν(ρ)|(1+ρ)^{1/2+Re ν} stays bounded")
def _j_norm(tol, seed):
    near = np.linspace(1e-3, 200.0, 4001)
    far = np.linspace(200.0, 2000.0, 9001)
    excess, constants = [], {}
    for label, nu in (("nu0", 0.0), ("nu_half", 0.5), ("nu_c1", 1.0 + 1.0j), ("nu_c2", 2.5 - 0.5j)):
        c_near = bessel.norm_envelope(nu, near)
        c_far = bessel.norm_envelope(nu, far)
        constants[f"envelope_{label}"] = max(c_near, c_far)
        excess.append(c_far / c_near - 1.0)
    return _bound("j_norm", excess, tol, constants)


@_check("gamma_reflection", "bessel", 1e-11, "Γ(z)Γ(1-z) sin(πz)/π = 1 on 100 strip samples")
def _gamma_reflection(tol, seed):
    rng = np.random.default_rng(seed + 2)
    zs = _strip_sample(rng, 100, 0.05, 0.95, 3.0)
    lhs = [gamma(z) * gamma(1 - z) * np.sin(np.pi * z) / np.pi for z in zs]
    return VerificationReport.compare("gamma_reflection", lhs, np.ones(100), tol)


@_check("gamma_recurrence", "bessel", 1e-12, "Γ(z+1) = z Γ(z) on 100 strip samples")
def _gamma_recurrence(tol, seed):
    rng = np.random.default_rng(seed + 2)
    zs = _strip_sample(rng, 100, 0.05, 0.95, 3.0)
    return VerificationReport.compare("gamma_recurrence", [gamma(z + 1) for z in zs], [z * gamma(z) for z in zs], tol)


_BETA_RULE = QuadratureRule(abs_tol=1e-15, rel_tol=1e-13)


@_check("beta_integral", "bessel", 1e-10, "B(z, w) against ∫_0^1 s^{z-1}(1-s)^{w-1} ds")
def _beta_integral(tol, seed):
    rng = np.random.default_rng(seed + 3)
    zs = _strip_sample(rng, 20, 0.2, 3.0, 1.0)
    ws = _strip_sample(rng, 20, 0.2, 3.0, 1.0)
    quad = [integrate_1d(lambda s: np.ones_like(s), (0.0, 1.0), _BETA_RULE, (z - 1, w - 1)).value for z, w in zip(zs, ws)]
    return VerificationReport.compare("beta_integral", [beta(z, w) for z, w in zip(zs, ws)], quad, tol)


# --- radial transform --------------------------------------------------------------

_Z_GRID = (0.0, 0.25, 0.5, 0.75, 0.25 + 0.5j)
_XI_GRID = (0.0, 0.3, 0.7, 1.5, 3.0)


@_check("omega_transform_series", "radial", 1e-10, "Bessel form of Ω̂^z vs its power series")
def _omega_series(tol, seed):
    got, want = [], []
    for n in (1, 2):
        for z in _Z_GRID:
            spec = OmegaSpec(z, n)
            for xi in _XI_GRID:
                got.append(radial.omega_hat(spec, xi))
                want.append(radial.omega_hat_series(spec, xi))
    return VerificationReport.compare("omega_transform_series", got, want, tol)


@_check("omega_transform_ball", "radial", 1e-6, "Bessel form of Ω̂^z vs direct integration over the ball")
def _omega_ball(tol, seed):
    cases = [(OmegaSpec(z, n), xi) for n in (1, 2) for z in _Z_GRID for xi in _XI_GRID]
    oracle = pmap(lambda c: radial.omega_hat_oracle_ball(*c), cases)
    got = [radial.omega_hat(*c) for c in cases]
    # anchor values: length of (-1, 1), the arcsine integral, area of the unit disk
    anchors = [
        (radial.omega_hat_oracle_ball(OmegaSpec(0, 1), 0.0), 2.0),
        (radial.omega_hat_oracle_ball(OmegaSpec(0.5, 1), 0.0), 1.0),
        (radial.omega_hat_oracle_ball(OmegaSpec(0, 2), 0.0), math.pi),
    ]
    return VerificationReport.compare(
        "omega_transform_ball", got + [a for a, _ in anchors], oracle + [b for _, b in anchors], tol
    )


@_check("omega_cos_coefficients", "radial", 1e-12, "Taylor coefficients of Ω̂^z by three derivations, k ≤ 10")
def _omega_coefficients(tol, seed):
    got, want = [], []
    for n in (1, 2):
        for z in _Z_GRID:
            for k in range(11):
                c = radial.taylor_coefficients(OmegaSpec(z, n), k)
                for key in ("cosine", "ball"):
                    if key in c:
                        got.append(c[key])
                        want.append(c["series"])
    return VerificationReport.compare("omega_cos_coefficients", got, want, tol)


@_check("omega_recurrence", "radial", 1e-10, "π Ω̂^{z+1} + π|ξ|² Ω̂^{z-1} = (n/2 - z) Ω̂^z for Re z >= 1")
def _omega_recurrence(tol, seed):
    xi = np.array([0.3, 0.7, 1.5, 3.0])
    got, want = [], []
    for n in (1, 2):
        for z in (1.0, 1.25, 1.5 + 0.5j, 2.0, 2.75):
            spec = OmegaSpec(z, n)
            up = np.asarray(radial.omega_hat(OmegaSpec(z + 1, n), xi))
            down = np.asarray(radial.omega_hat(OmegaSpec(z - 1, n), xi))
            got.append(math.pi * up + math.pi * xi**2 * down)
            want.append(spec.order * np.asarray(radial.omega_hat(spec, xi)))
    return VerificationReport.compare("omega_recurrence", np.concatenate(got), np.concatenate(want), tol)


# --- lambda ----------------------------------------------------------------------------

LAMBDA_ALPHAS = (0.55, 0.75, 0.95, 0.6 + 0.3j, 0.6 - 0.3j)
LAMBDA_XI = (0.5, 1.0, 2.0)
LAMBDA_TAU = (0.2, 0.7, 1.4, 2.5)


def lambda_grid() -> list[tuple[complex, ConePoint]]:
    return [
        (a, ConePoint(xi, tau))
        for a in LAMBDA_ALPHAS
        for xi in LAMBDA_XI
        for tau in LAMBDA_TAU
        if abs(abs(tau) - xi) >= 0.05
    ]


@_check("lambda_osc", "lambda", 1e-4, "closed Λ̂^α vs the oscillatory shell representation")
def _lambda_osc(tol, seed):
    grid = lambda_grid()
    osc = pmap(lambda c: cone.lambda_hat_oscillatory(*c), grid)
    closed = [cone.lambda_hat_closed(*c) for c in grid]
    return VerificationReport.compare("lambda_osc", osc, closed, tol)


def _cone_rate(side):
    def run(tol, seed):
        parts = [cone.cone_rate_report(a, 1.0, side, tolerance=tol) for a in (0.75, 0.6 + 0.3j)]
        return VerificationReport.combine(f"cone_rate_{side}", parts, tol)

    return run


for _side in ("inside", "outside"):
    CHECKS.append(Check(f"cone_rate_{_side}", "lambda", 0.05, _cone_rate(_side), f"blow-up slope -Re α approaching the cone from {_side}"))


@_check("dyadic_bound", "lambda", 0.1, "shell bounds and total blow-up slope of the main term")
def _dyadic_bound(tol, seed):
    parts = [
        cone.dyadic_bound_report(0.75, ConePoint(1.0, 1.5), tolerance=tol),
        cone.dyadic_bound_report(0.6 + 0.3j, ConePoint(1.0, 0.5), tolerance=tol),
    ]
    return VerificationReport.combine("dyadic_bound", parts, tol)


@_check("omega_kernel", "lambda", 0.02, "ω(0) = 1/2 and 2π|r||ω(r)| → 1, with sup |ω(r)|(1+|r|) on [-100, 100]")
def _omega_kernel(tol, seed):
    r = np.linspace(-100.0, 100.0, 200001)
    w = np.abs(cone.omega_kernel(r))
    sup = float(np.max(w * (1 + np.abs(r))))
    got = [cone.omega_kernel(0.0), 200 * math.pi * abs(cone.omega_kernel(100.0)), 200 * math.pi * abs(cone.omega_kernel(-100.0))]
    rep = VerificationReport.compare("omega_kernel", got, [0.5, 1.0, 1.0], tol, {"sup_weighted": sup})
    if not math.isfinite(sup):
        rep = VerificationReport(rep.formula_id, rep.points, rep.max_abs_err, math.inf, tol, False, rep.constants)
    return rep


# --- multiplier algebra -------------------------------------------------------------------

_ALGEBRA_ALPHAS = (0.2, 0.45, 0.5, 0.8, 0.6 + 0.3j)


@_check("m_plus", "multiplier-algebra", 1e-9, "m_+ closed form vs its defining τ integral")
def _m_plus(tol, seed):
    xi = np.linspace(0.41, 0.98, 12)
    cases = [(a, x) for a in (0.2, 0.5, 0.9, 0.35 + 0.4j) for x in xi]
    return VerificationReport.compare(
        "m_plus", [cone.m_plus(a, x) for a, x in cases], [cone.m_plus_integral(a, x) for a, x in cases], tol
    )


@_check("m_minus", "multiplier-algebra", 1e-9, "m_- closed form vs its defining τ integral")
def _m_minus(tol, seed):
    xi = np.concatenate([np.linspace(0.4, 0.95, 8), np.linspace(1.05, 2.9, 10)])
    cases = [(a, x) for a in (0.2, 0.5, 0.9, 0.35 + 0.4j) for x in xi]
    return VerificationReport.compare(
        "m_minus", [cone.m_minus(a, x) for a, x in cases], [cone.m_minus_integral(a, x) for a, x in cases], tol
    )


@_check("p_hat", "multiplier-algebra", 1e-8, "τ integral of the closed Λ̂^α vs the m^α combination across the shell")
def _p_hat(tol, seed):
    xi = np.linspace(0.35, 2.95, 14)
    cases = [(a, x) for a in (0.3, 0.75, 0.6 + 0.3j) for x in xi]
    quad = pmap(lambda c: cone.p_hat(*c), cases)
    return VerificationReport.compare("p_hat", quad, [complex(cone.p_hat_closed(a, x)) for a, x in cases], tol)


_ALGEBRA_XI = np.linspace(0.0, 3.5, 500)


@_check("m_3", "multiplier-algebra", 1e-12, "squaring identity for m^{1/2+α/2}")
def _m3(tol, seed):
    parts = [cone.squaring_identity_check(a, _ALGEBRA_XI, tolerance=tol) for a in _ALGEBRA_ALPHAS]
    return VerificationReport.combine("m_3", parts, tol)


@_check("subtract", "multiplier-algebra", 1e-12, "subtraction identity; coefficient sin²(π/4) = 1/2 at α = 1/2")
def _subtract(tol, seed):
    parts = [cone.subtraction_identity_check(a, _ALGEBRA_XI, tolerance=tol) for a in _ALGEBRA_ALPHAS]
    parts.append(VerificationReport.compare("subtract", cone.subtraction_coefficient(0.5), 0.5, tol))
    return VerificationReport.combine("subtract", parts, tol)


@_check("marcinkiewicz", "multiplier-algebra", 1e-3, "log-derivative sups of (1-ψ̂)(1-|ξ|²)_+^δ up to order 3")
def _marcinkiewicz(tol, seed):
    parts = [cone.marcinkiewicz_check(d, tolerance=tol) for d in (0.25, 0.25 + 0.5j)]
    return VerificationReport.combine("marcinkiewicz", parts, tol)


# --- power-law and quadratic-form transforms -----------------------------------------------


@_check("power_transform", "appendix-b", 1e-8, "Fourier transform of |x|^{γ-N} by Parseval pairing")
def _power_transform(tol, seed):
    parts = [
        radial.power_law_ft_check(g, n, w, tol)
        for g, n, w in ((0.5, 1, 1.0), (0.3, 1, 1.0), (0.5 + 0.3j, 1, 0.7), (1.0, 2, 1.0), (1.4 - 0.2j, 2, 1.3))
    ]
    parts.append(VerificationReport.compare("power_transform", radial.power_law_coefficient(0.5, 1), 1.0, tol))
    return VerificationReport.combine("power_transform", parts, tol)


Q_SAMPLES = (
    (0.3, 1 + 1j, 2 + 0.5j),
    (0.5, 1 + 0.2j, 1 + 0.2j),
    (0.7, 0.5 + 1j, 3 + 2j),
    (0.4 + 0.2j, 1 - 1j, 2 - 0.5j),
    (0.25, 2 + 0.1j, 0.5 + 0.3j),
)


@_check("q_transform", "appendix-b", 1e-6, "transform of (z x² + w t²)^{-σ} by Parseval pairing")
def _q_transform(tol, seed):
    parts = [cone.q_transform_parseval_check(s, z, w, tolerance=tol) for s, z, w in Q_SAMPLES]
    return VerificationReport.combine("q_transform", parts, tol)


@_check("lambda_formula", "appendix-b", 1e-12, "coefficient of Λ̂^α from the Q transform equals its closed constant")
def _lambda_formula(tol, seed):
    parts = [cone.lambda_formula_consistency(a, n, tol) for n in (1, 2) for a in (0.5, 0.3, 0.75, 0.6 + 0.3j)]
    return VerificationReport.combine("lambda_formula", parts, tol)


# --- operators ----------------------------------------------------------------------------

FFT_PROBES = (-3.0, -1.0, 0.0, 0.5, 2.5)


def load_bundled_field() -> operators.SampledField:
    from .fieldio import read_field

    with resources.as_file(resources.files("conewave") / "data" / "gaussian_field.txt") as path:
        return read_field(path)


def load_golden() -> operators.SampledField:
    from .fieldio import read_field

    with resources.as_file(resources.files("conewave") / "data" / "golden_s_delta_psi.txt") as path:
        return read_field(path)


@_check("fft_oracle", "operators", 1e-6, "FFT application vs frequency quadrature at 5 probes (|f| <= 1 scale)")
def _fft_oracle(tol, seed):
    grid = operators.DEFAULT_GRID
    m = operators.MultiplierSpec("S-delta-psi", 0.25)
    tf = operators.TestFunction("gaussian", 2.0)
    out = operators.apply_multiplier(tf.sample(grid), m).values
    idx = [int(round((x + grid.halfwidth) / grid.dx)) for x in FFT_PROBES]
    oracle = operators.direct_quadrature_oracle(tf, m, grid.axis()[idx])
    return VerificationReport.compare("fft_oracle", out[idx], oracle, tol, relative=False)


@_check("linearity", "operators", 1e-12, "T(af + bg) = aTf + bTg on random band-limited fields")
def _linearity(tol, seed):
    grid = operators.DEFAULT_GRID
    rng = np.random.default_rng(seed)
    f = operators.TestFunction("band-limited", seed=seed).sample(grid)
    g = operators.TestFunction("band-limited", seed=seed + 1, band=2.0).sample(grid)
    a, b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    errs = []
    for m in (operators.MultiplierSpec("S-delta-psi", 0.25 + 0.5j), operators.MultiplierSpec("I-alpha", 0.75)):
        lhs = operators.apply_multiplier(f.scale(a) + g.scale(b), m).values
        rhs = a * operators.apply_multiplier(f, m).values + b * operators.apply_multiplier(g, m).values
        errs.append(np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs))))
    return _bound("linearity", errs, tol)


@_check("composition", "operators", 1e-10, "applying m^{1/2+α/2} twice equals applying its square once")
def _composition(tol, seed):
    grid = operators.DEFAULT_GRID
    f = operators.TestFunction("gaussian", 1.0).sample(grid)
    errs = []
    for a in (0.5, 0.75, 0.6 + 0.3j):
        half = 0.5 + a / 2
        m = operators.MultiplierSpec("raw-radial", callback=lambda r, h=half: cone.m_alpha(h, r))
        m2 = operators.MultiplierSpec("raw-radial", callback=lambda r, h=half: np.asarray(cone.m_alpha(h, r)) ** 2)
        twice = operators.apply_multiplier(operators.apply_multiplier(f, m), m).values
        once = operators.apply_multiplier(f, m2).values
        errs.append(np.max(np.abs(twice - once)))
    return _bound("composition", errs, tol)


def _norm_multipliers() -> list[operators.MultiplierSpec]:
    return [
        operators.MultiplierSpec("S-delta-psi", 0.25),
        operators.MultiplierSpec("S-delta-psi", 0.25 + 1j),
        operators.MultiplierSpec("S-delta", 0.25),
        operators.MultiplierSpec("I-alpha", 0.75),
    ]


@_check("plancherel", "operators", 1e-10, "p = 2 estimate <= grid sup |m|; identity gives 1 at every p")
def _plancherel(tol, seed):
    grid = operators.DEFAULT_GRID
    excess, constants = [], {}
    for m in _norm_multipliers():
        est = operators.operator_norm_estimate(m, 2.0, grid=grid)
        sup = float(np.max(np.abs(operators.multiplier_on_grid(grid, m))))
        constants[f"ratio_{m.describe()}"] = est.ratio_max
        excess.append(est.ratio_max - sup)
    ident = operators.MultiplierSpec.identity()
    for p in (1.2, 2.0, 6.0):
        excess.append(abs(operators.operator_norm_estimate(ident, p, grid=grid).ratio_max - 1.0))
    return _bound("plancherel", excess, tol, constants)


IM_SWEEP = (0.0, 0.5, 1.0)
SWEEP_P = 1.2


def im_sweep(re_delta: float = 0.25, ims=IM_SWEEP, p: float = SWEEP_P, grid=operators.DEFAULT_GRID) -> tuple[list[float], float]:
    """Norm estimates along ``δ = re_delta + i·t`` and the fitted slope of ``log`` estimate in ``|t|``."""
    ests = [
        operators.operator_norm_estimate(operators.MultiplierSpec("S-delta-psi", complex(re_delta, t)), p, grid=grid).ratio_max
        for t in ims
    ]
    slope = float(np.polyfit(np.abs(ims), np.log(ests), 1)[0]) if len(ims) > 1 else 0.0
    return ests, slope


@_check("im_sweep", "operators", 1e-12, "estimates non-decreasing in |Im δ| at p = 1.2, finite envelope slope")
def _im_sweep(tol, seed):
    ests, slope = im_sweep()
    drops = [ests[k] - ests[k + 1] for k in range(len(ests) - 1)]
    constants = {f"ratio_im_{t:g}": e for t, e in zip(IM_SWEEP, ests)}
    constants["envelope_slope"] = slope
    rep = _bound("im_sweep", drops, tol, constants)
    if not math.isfinite(slope):
        rep = VerificationReport(rep.formula_id, rep.points, rep.max_abs_err, math.inf, tol, False, rep.constants)
    return rep


RESTRICTED_P = (1.2, 1.5, 2.0, 3.0, 6.0)


@_check("restricted_range", "operators", 0.0, "δ = 0.25 estimates over p in [1.2, 6] stay below 10x the p = 2 value")
def _restricted_range(tol, seed):
    m = operators.MultiplierSpec("S-delta-psi", 0.25)
    ests = {p: operators.operator_norm_estimate(m, p).ratio_max for p in RESTRICTED_P}
    constants = {f"ratio_p{p:g}": v for p, v in ests.items()}
    return _bound("restricted_range", [v / (10 * ests[2.0]) - 1.0 for v in ests.values()], tol, constants)


@_check("golden", "operators", 1e-9, "S-delta-psi (δ = 1/4) on the bundled field vs the stored quadrature values")
def _golden(tol, seed):
    out = operators.apply_multiplier(load_bundled_field(), operators.MultiplierSpec("S-delta-psi", GOLDEN_DELTA))
    return VerificationReport.compare("golden", out.values, load_golden().values, tol, relative=False)


# --- running ---------------------------------------------------------------------------------


def formula_ids() -> list[str]:
    return [c.formula_id for c in CHECKS]


def checks_for(suite: str) -> list[Check]:
    if suite == "all":
        return list(CHECKS)
    if suite not in SUITES:
        raise ConewaveError(f"unknown suite {suite!r}")
    return [c for c in CHECKS if c.suite == suite]


def run_check(check: Check, tolerance: float | None = None, seed: int = DEFAULT_SEED) -> VerificationReport:
    tol = check.tolerance if tolerance is None else float(tolerance)
    return check.run(tol, seed)


def run_suite(
    suite: str,
    overrides: Mapping[str, float] | None = None,
    seed: int = DEFAULT_SEED,
    on_report: Callable[[VerificationReport], None] | None = None,
) -> list[VerificationReport]:
    """Run a suite in registration order; unknown override ids raise :class:`ConewaveError`."""
    overrides = dict(overrides or {})
    unknown = sorted(set(overrides) - set(formula_ids()))
    if unknown:
        raise ConewaveError(f"unknown formula id(s): {', '.join(unknown)}")
    reports = []
    for check in checks_for(suite):
        rep = run_check(check, overrides.get(check.formula_id), seed)
        reports.append(rep)
        if on_report is not None:
            on_report(rep)
    return reports
