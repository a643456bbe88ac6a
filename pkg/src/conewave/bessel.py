"""Bessel functions ``J_ν`` of complex order on the positive real axis.

Three independent evaluation routes are provided:

``poisson-integral``
    ``J_ν(ρ) = (ρ/2)^ν / (√π Γ(ν+1/2)) ∫_{-1}^{1} e^{iρs} (1-s²)^{ν-1/2} ds``
    for ``Re ν > -1/2``.
``power-series``
    ``J_ν(ρ) = Σ_k (-1)^k (ρ/2)^{2k+ν} / (k! Γ(k+ν+1))``.  Above ``ρ = 8`` the
    alternating sum cancels badly in double precision, so it is accumulated
    with mpmath at a working precision sized from the largest term.
``asymptotic``
    the large-argument expansion with the coefficients of
    :func:`asymptotic_coefficients`, truncated after ``N`` correction terms.

``auto`` picks the cheapest accurate route and is what the rest of the package
uses.  Most work happens on the scaled function ``ρ^{-ν} J_ν(ρ)``, which is
entire in ``ρ`` and needs no branch choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DomainError
from .numerics import ComplexParam, QuadratureRule, gamma, hankel_symbol, integrate_1d, rgamma

__all__ = [
    "BesselEvalRoute",
    "AUTO",
    "POISSON",
    "SERIES",
    "asymptotic",
    "AsymptoticCoeffs",
    "CROSSOVER",
    "asymptotic_coefficients",
    "asymptotic_partial",
    "bessel_j",
    "bessel_scaled",
    "asymptotic_remainder",
    "recurrence_residual",
    "norm_envelope",
]

CROSSOVER = 15.0
SERIES_DOUBLE_LIMIT = 8.0
SERIES_REL_STOP = 1e-18

_POISSON_RULE = QuadratureRule(abs_tol=1e-300, rel_tol=2e-14, panels=4, nodes_per_panel=24)


@dataclass(frozen=True)
class BesselEvalRoute:
    route: str
    terms: int | None = None

    def __post_init__(self) -> None:
        if self.route not in ("auto", "poisson-integral", "power-series", "asymptotic"):
            raise DomainError(f"unknown Bessel route {self.route!r}")
        if self.route == "asymptotic" and (self.terms is None or self.terms < 0):
            raise DomainError("asymptotic route needs a term count N >= 0")


AUTO = BesselEvalRoute("auto")
POISSON = BesselEvalRoute("poisson-integral")
SERIES = BesselEvalRoute("power-series")


def asymptotic(N: int) -> BesselEvalRoute:
    return BesselEvalRoute("asymptotic", N)


def _as_route(route) -> BesselEvalRoute:
    if isinstance(route, BesselEvalRoute):
        return route
    if route == "asymptotic":
        raise DomainError("use asymptotic(N) to choose the truncation")
    return BesselEvalRoute(route)


@dataclass(frozen=True)
class AsymptoticCoeffs:
    """Coefficients of the large-argument expansion.

    ``a[k]`` multiplies ``cos χ · ρ^{-2k}`` and ``b[k]`` multiplies
    ``sin χ · ρ^{-2k+1}``; ``a[0] = 1`` is the leading term and ``b[0] = 0``
    is a placeholder so both arrays are indexed by ``k = 0..N``.
    """

    a: np.ndarray
    b: np.ndarray
    N: int


def asymptotic_coefficients(order, N: int) -> AsymptoticCoeffs:
    # b_k = (-1)**k [ν, 2k-1] 2**(1-2k): the sign that reproduces J_0 ~ cos χ + sin χ/(8ρ).
    nu = complex(order)
    a = np.array([(-1) ** k * hankel_symbol(nu, 2 * k) * 2.0 ** (-2 * k) for k in range(N + 1)])
    b = np.array(
        [0j] + [(-1) ** k * hankel_symbol(nu, 2 * k - 1) * 2.0 ** (1 - 2 * k) for k in range(1, N + 1)]
    )
    return AsymptoticCoeffs(a, b, N)


def asymptotic_partial(order, rho, N: int):
    """Expansion of ``J_ν(ρ)`` through ``k = N``."""
    nu = complex(order)
    rho = np.asarray(rho, dtype=float)
    c = asymptotic_coefficients(nu, N)
    chi = rho - nu * np.pi / 2 - np.pi / 4
    cos_part = np.zeros_like(rho, dtype=complex)
    sin_part = np.zeros_like(rho, dtype=complex)
    for k in range(N, -1, -1):
        cos_part = cos_part + c.a[k] * rho ** (-2.0 * k)
        if k:
            sin_part = sin_part + c.b[k] * rho ** (1.0 - 2.0 * k)
    out = np.sqrt(2.0 / (np.pi * rho)) * (np.cos(chi) * cos_part + np.sin(chi) * sin_part)
    return _out(out)


def _asymptotic_adaptive(nu: complex, rho: np.ndarray) -> np.ndarray:
    """Hankel expansion summed until its terms stop decreasing."""
    chi = rho - nu * np.pi / 2 - np.pi / 4
    p = np.zeros_like(rho, dtype=complex)
    q = np.zeros_like(rho, dtype=complex)
    four_nu2 = 4 * nu * nu
    coef = 1.0 + 0j  # a_m(ν) = [ν, m] / 2**m
    prev = np.full(rho.shape, np.inf)
    active = np.ones(rho.shape, dtype=bool)
    for m in range(0, 200):
        if m:
            coef *= (four_nu2 - (2 * m - 1) ** 2) / (8.0 * m)
        term = coef / rho ** m
        mag = np.abs(term)
        active &= mag < prev
        if not active.any():
            break
        sign = (-1) ** (m // 2)
        contrib = np.where(active, sign * term, 0)
        if m % 2 == 0:
            p += contrib
        else:
            q += contrib
        prev = np.where(active, mag, prev)
        active &= mag > 1e-17 * np.maximum(np.abs(p), 1e-300)
        if not active.any():
            break
    return np.sqrt(2.0 / (np.pi * rho)) * (p * np.cos(chi) - q * np.sin(chi))


# --- scaled routes: S_ν(ρ) = ρ^{-ν} J_ν(ρ) -----------------------------------


def _negative_integer(nu: complex) -> int | None:
    if abs(nu.imag) <= 1e-12 and nu.real < 0 and abs(nu.real - round(nu.real)) <= 1e-12:
        return -int(round(nu.real))
    return None


def _scaled_series_double(nu: complex, x: np.ndarray) -> np.ndarray:
    term = np.full(x.shape, rgamma(nu + 1), dtype=complex)
    total = term.copy()
    q = -(x * x) / 4.0
    small = np.zeros(x.shape, dtype=int)
    k = 0
    while True:
        k += 1
        term = term * q / (k * (k + nu))
        total = total + term
        tiny = np.abs(term) < SERIES_REL_STOP * np.abs(total)
        small = np.where(tiny | (term == 0), small + 1, 0)
        if k > abs(nu) and np.all(small >= 3):
            break
        if k > 500:
            break
    return 2.0 ** (-nu) * total


def _scaled_series_extended(nu: complex, x: float) -> complex:
    # the common factor rgamma(ν+1) carries no cancellation; only the sum needs extra digits
    lead = rgamma(nu + 1)
    digits = 20 + int(x / math.log(10)) + int(abs(nu.imag))
    with mpmath.workdps(digits):
        mnu = mpmath.mpc(nu.real, nu.imag)
        q = -mpmath.mpf(x) ** 2 / 4
        term = mpmath.mpc(1)
        total = mpmath.mpc(1)
        small, k = 0, 0
        while small < 3 or k <= abs(nu):
            k += 1
            term = term * q / (k * (k + mnu))
            total += term
            small = small + 1 if abs(term) < SERIES_REL_STOP * abs(total) else 0
        s = complex(total)
    return 2.0 ** (-nu) * lead * s


def _scaled_series(nu: complex, x: np.ndarray) -> np.ndarray:
    m = _negative_integer(nu)
    if m is not None:
        # J_{-m} = (-1)^m J_m, so ρ^{m} J_{-m} = (-1)^m ρ^{2m} S_m
        return (-1) ** m * x ** (2 * m) * _scaled_series(complex(m), x)
    out = np.empty(x.shape, dtype=complex)
    lo = x <= SERIES_DOUBLE_LIMIT
    if lo.any():
        out[lo] = _scaled_series_double(nu, x[lo])
    for i in np.flatnonzero(~lo):
        out[i] = _scaled_series_extended(nu, float(x[i]))
    return out


def _scaled_poisson(nu: complex, x: np.ndarray) -> np.ndarray:
    if nu.real <= -0.5:
        raise DomainError("Poisson integral needs Re ν > -1/2")
    c = nu - 0.5
    xmax = float(np.max(x)) if x.size else 0.0
    rule = _POISSON_RULE.with_(panels=max(4, math.ceil(xmax / 3.0)))
    # the plain sum of |weights| sets the rounding floor of the integral
    scale = 0.5 * abs(gamma(0.5) * gamma(nu.real + 0.5) * rgamma(nu.real + 1.0))
    rule = rule.with_(abs_tol=4e-15 * scale)

    def smooth(s):
        return np.cos(np.multiply.outer(x, s)) * (1.0 + s) ** c

    integral = integrate_1d(smooth, (0.0, 1.0), rule, (0, c)).value
    return 2.0 ** (1.0 - nu) * rgamma(nu + 0.5) / math.sqrt(math.pi) * np.asarray(integral)


def _asym_threshold(nu: complex) -> float:
    return max(40.0, 4.0 * abs(nu) ** 2)


def _scaled_auto(nu: complex, x: np.ndarray) -> np.ndarray:
    out = np.empty(x.shape, dtype=complex)
    lo = x <= SERIES_DOUBLE_LIMIT
    hi = x >= _asym_threshold(nu)
    mid = ~(lo | hi)
    if lo.any():
        out[lo] = _scaled_series(nu, x[lo])
    if mid.any() and nu.real > -0.5:
        out[mid] = _scaled_poisson(nu, x[mid])
    elif mid.any():
        xm = x[mid]
        near = xm <= 20.0
        vals = np.empty(xm.shape, dtype=complex)
        if near.any():
            vals[near] = _scaled_series(nu, xm[near])
        if (~near).any():
            # downward recurrence S_ν = 2(ν+1) S_{ν+1} - ρ² S_{ν+2}, stable for J
            xf = xm[~near]
            vals[~near] = 2.0 * (nu + 1.0) * _scaled_auto(nu + 1, xf) - xf * xf * _scaled_auto(nu + 2, xf)
        out[mid] = vals
    if hi.any():
        xh = x[hi]
        out[hi] = _asymptotic_adaptive(nu, xh) * np.exp(-nu * np.log(xh))
    return out


def _scaled(nu: complex, x: np.ndarray, route: BesselEvalRoute) -> np.ndarray:
    if route.route == "auto":
        return _scaled_auto(nu, x)
    if route.route == "power-series":
        return _scaled_series(nu, x)
    if route.route == "poisson-integral":
        return _scaled_poisson(nu, x)
    if np.any(x < CROSSOVER):
        raise DomainError(f"asymptotic route needs ρ >= {CROSSOVER}")
    return np.asarray(asymptotic_partial(nu, x, route.terms)) * np.exp(-nu * np.log(x))


def _out(arr):
    arr = np.asarray(arr)
    return complex(arr) if arr.ndim == 0 else arr


def _prepare(rho, route) -> tuple[np.ndarray, BesselEvalRoute]:
    x = np.asarray(rho, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < 0):
        raise DomainError("ρ must be finite and non-negative")
    return x, _as_route(route)


def bessel_scaled(order: complex | ComplexParam, rho, route=AUTO):
    """``ρ^{-ν} J_ν(ρ)`` (principal branch), finite at ``ρ = 0``."""
    nu = complex(order)
    x, r = _prepare(rho, route)
    flat = x.reshape(-1)
    return _out(_scaled(nu, flat, r).reshape(x.shape))


def bessel_j(order: complex | ComplexParam, rho, route=AUTO):
    """``J_ν(ρ)`` for ``ρ >= 0``; ``ρ = 0`` only where the limit is finite."""
    nu = complex(order)
    x, r = _prepare(rho, route)
    flat = x.reshape(-1)
    if r.route == "asymptotic":
        if np.any(flat < CROSSOVER):
            raise DomainError(f"asymptotic route needs ρ >= {CROSSOVER}")
        return _out(np.asarray(asymptotic_partial(nu, flat, r.terms)).reshape(x.shape))
    zero = flat == 0
    if zero.any() and nu != 0 and nu.real <= 0:
        raise DomainError(f"J_ν(0) is not finite for ν = {nu}")
    s = _scaled(nu, flat, r)
    with np.errstate(divide="ignore", invalid="ignore"):
        power = np.where(zero, 0.0, np.exp(nu * np.log(np.where(zero, 1.0, flat))))
    if nu == 0:
        power = np.ones_like(power)
    return _out((s * power).reshape(x.shape))


def _reference_j(nu: complex, x: np.ndarray) -> np.ndarray:
    """Most accurate independent route for each argument."""
    out = np.empty(x.shape, dtype=complex)
    small = x <= 20.0
    if small.any():
        xs = x[small]
        out[small] = _scaled_series(nu, xs) * np.exp(nu * np.log(xs))
    if (~small).any():
        xl = x[~small]
        if nu.real > -0.5:
            out[~small] = _scaled_poisson(nu, xl) * np.exp(nu * np.log(xl))
        else:
            out[~small] = _scaled_auto(nu, xl) * np.exp(nu * np.log(xl))
    return out


def asymptotic_remainder(order, rho, N: int):
    """``|J_ν(ρ) - expansion through k = N|`` against an independent route."""
    nu = complex(order)
    x = np.asarray(rho, dtype=float).reshape(-1)
    if np.any(x < CROSSOVER):
        raise DomainError(f"remainder is defined for ρ >= {CROSSOVER}")
    if N < 0:
        raise DomainError("N must be non-negative")
    exact = _scaled_poisson(nu, x) * np.exp(nu * np.log(x)) if nu.real > -0.5 else _reference_j(nu, x)
    approx = np.asarray(asymptotic_partial(nu, x, N))
    res = np.abs(exact - approx).reshape(np.shape(rho))
    return float(res) if res.ndim == 0 else res


def recurrence_residual(order, rho):
    """``|J_{ν-1}(ρ) - 2(ν/ρ) J_ν(ρ) + J_{ν+1}(ρ)|``, each term by its reference route."""
    nu = complex(order)
    x = np.asarray(rho, dtype=float).reshape(-1)
    if np.any(x <= 0):
        raise DomainError("ρ must be positive")
    jm, j0, jp = (_reference_j(nu + d, x) for d in (-1.0, 0.0, 1.0))
    res = np.abs(jm - 2.0 * nu / x * j0 + jp).reshape(np.shape(rho))
    return float(res) if res.ndim == 0 else res


def norm_envelope(order, rho) -> float:
    """Empirical ``sup |ρ^{-ν} J_ν(ρ)| (1+ρ)^{1/2 + Re ν}`` over the given points.

    The exponential factor in ``Im ν`` is folded into the returned constant.
    """
    nu = complex(order)
    x = np.asarray(rho, dtype=float).reshape(-1)
    s = np.asarray(bessel_scaled(nu, x))
    return float(np.max(np.abs(s) * (1.0 + x) ** (0.5 + nu.real)))
