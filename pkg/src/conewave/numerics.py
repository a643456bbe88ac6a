"""Complex gamma/beta machinery and deterministic composite quadrature.

Every quadrature here is a fixed, data-independent rule: the same rule and the
same integrand always produce bitwise-identical results.  Integrands are
vectorised callables ``f(x) -> array`` whose trailing axis matches ``x``; a
leading batch shape is allowed and carried through to the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import special

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "ComplexParam",
    "QuadratureRule",
    "QuadResult",
    "OscillatoryResult",
    "DEFAULT_RULE",
    "gamma",
    "rgamma",
    "beta",
    "hankel_symbol",
    "integrate_1d",
    "integrate_piecewise",
    "integrate_oscillatory",
]

Integrand = Callable[[np.ndarray], np.ndarray]

POLE_TOL = 1e-12


@dataclass(frozen=True)
class ComplexParam:
    """A complex order or exponent ``re + i*im``.

    Every function in the package accepts plain numbers as well; this class
    exists for the checked constructor :meth:`in_strip` and for readable
    reprs in reports.
    """

    re: float
    im: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(f"non-finite parameter {self.re!r}+{self.im!r}i")

    @classmethod
    def of(cls, value: complex | float | ComplexParam) -> ComplexParam:
        if isinstance(value, ComplexParam):
            return value
        c = complex(value)
        return cls(c.real, c.imag)

    @classmethod
    def in_strip(
        cls, value: complex | float | ComplexParam, lo: float, hi: float
    ) -> ComplexParam:
        """Build a parameter and require ``lo < Re value < hi``."""
        p = cls.of(value)
        if not lo < p.re < hi:
            raise DomainError(f"Re {p.value} must lie in ({lo}, {hi})")
        return p

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __complex__(self) -> complex:
        return self.value

    def __str__(self) -> str:
        if self.im == 0:
            return f"{self.re:g}"
        return f"{self.re:g}{self.im:+g}i"


def _is_pole(z: complex) -> bool:
    return (
        abs(z.imag) <= POLE_TOL
        and z.real < 0.5
        and abs(z.real - round(z.real)) <= POLE_TOL
    )


def gamma(z: complex | float | ComplexParam) -> complex:
    """Complex gamma function.

    Raises :class:`PoleError` within ``1e-12`` of a non-positive integer.
    """
    z = complex(z)
    if _is_pole(z):
        raise PoleError(f"gamma has a pole at {z}")
    return complex(special.gamma(z))


def rgamma(z: complex | float | ComplexParam) -> complex:
    """Reciprocal gamma function, exactly zero at the poles of gamma."""
    z = complex(z)
    if _is_pole(z):
        return 0j
    return complex(special.rgamma(z))


def beta(z: complex | float | ComplexParam, w: complex | float | ComplexParam) -> complex:
    """Euler beta function ``Γ(z)Γ(w)/Γ(z+w)`` for ``Re z, Re w > 0``."""
    z, w = complex(z), complex(w)
    if z.real <= 0 or w.real <= 0:
        raise DomainError(f"beta requires positive real parts, got {z}, {w}")
    if abs(z) < 20 and abs(w) < 20:
        return gamma(z) * gamma(w) * rgamma(z + w)
    lg = special.loggamma
    return complex(np.exp(lg(z) + lg(w) - lg(z + w)))


def hankel_symbol(order: complex | float | ComplexParam, m: int) -> complex:
    """Hankel symbol ``[ν, m] = Γ(1/2+ν+m) / (m! Γ(1/2+ν-m))``.

    Evaluated as ``prod_{j<=m} (4ν² - (2j-1)²) / (4j)``, which is the same
    ratio written without gamma functions.  A pole of the denominator gamma
    shows up as an exactly vanishing factor, so the symbol is 0 there.
    """
    if m < 0:
        raise DomainError("m must be non-negative")
    nu = complex(order)
    four_nu2 = 4.0 * nu * nu
    out = 1.0 + 0j
    for j in range(1, m + 1):
        out *= (four_nu2 - (2 * j - 1) ** 2) / (4.0 * j)
    return out


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class QuadratureRule:
    """Deterministic 1-D composite rule.

    ``panels`` sets the base panel width ``(b - a) / panels``; each refinement
    doubles it until two successive estimates agree to ``abs_tol`` or
    ``rel_tol`` (whichever is looser).  ``dyadic_range`` bounds the shells
    ``2**(j-1) <= |r| < 2**j`` used by :func:`integrate_oscillatory`.
    """

    kind: str = "gauss-legendre-composite"
    panels: int = 4
    nodes_per_panel: int = 20
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    dyadic_range: tuple[int, int] = (-40, 40)
    max_refinements: int = 8
    grading_levels: int = 16

    def __post_init__(self) -> None:
        if self.kind not in ("gauss-legendre-composite", "dyadic-oscillatory", "tensor-product"):
            raise DomainError(f"unknown rule kind {self.kind!r}")
        if self.panels < 1 or self.nodes_per_panel < 2:
            raise DomainError("need panels >= 1 and nodes_per_panel >= 2")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.dyadic_range[0] > self.dyadic_range[1]:
            raise DomainError("dyadic_range must satisfy j_min <= j_max")

    def with_(self, **changes) -> QuadratureRule:
        return replace(self, **changes)


DEFAULT_RULE = QuadratureRule()


@dataclass
class QuadResult:
    value: complex | np.ndarray
    error: float
    evaluations: int


@dataclass
class OscillatoryResult:
    value: complex
    tail_estimate: float
    shells: np.ndarray = field(repr=False)
    j_range: tuple[int, int] = (0, 0)


@lru_cache(maxsize=None)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


_PRODUCT_DEGREE = 8


@lru_cache(maxsize=256)
def _product_rule(power: complex) -> tuple[np.ndarray, np.ndarray]:
    # int_0^1 t**power g(t) dt ~ sum W_j g(t_j), g interpolated at Chebyshev points.
    k = np.arange(_PRODUCT_DEGREE)
    t = 0.5 * (1.0 - np.cos((2 * k + 1) * np.pi / (2 * _PRODUCT_DEGREE)))
    vander = np.vander(t, _PRODUCT_DEGREE, increasing=True)
    moments = 1.0 / (power + 1.0 + np.arange(_PRODUCT_DEGREE))
    return t, np.linalg.solve(vander.T.astype(complex), moments)


def _graded_segment(d: float, h0: float, npp: int, power: complex, levels: int):
    """Distances from a singular endpoint and weights for ``int_0^d δ**power g``."""
    xg, wg = _gauss_legendre(npp)
    deltas, weights = [], []
    hi = d
    for _ in range(levels):
        lo = hi / 2.0
        nsub = max(1, math.ceil((hi - lo) / h0))
        edges = lo + (hi - lo) * np.arange(nsub + 1) / nsub
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        dl = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
        wl = (half[:, None] * wg[None, :]).ravel()
        deltas.append(dl)
        weights.append(wl * dl ** power if power != 0 else wl.astype(complex))
        hi = lo
    eps = hi
    t, w_prod = _product_rule(complex(power))
    deltas.append(eps * t)
    weights.append(eps ** (power + 1.0) * w_prod)
    return np.concatenate(deltas), np.concatenate(weights)


def _uniform_segment(a: float, b: float, h0: float, npp: int):
    xg, wg = _gauss_legendre(npp)
    nsub = max(1, math.ceil((b - a) / h0 - 1e-9))
    edges = a + (b - a) * np.arange(nsub + 1) / nsub
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    w = (half[:, None] * wg[None, :]).ravel()
    return x, w


@lru_cache(maxsize=512)
def _plan(a: float, b: float, h0: float, npp: int, cl: complex, cr: complex, levels: int):
    """Nodes and (complex) weights for ``int_a^b f(x) (x-a)**cl (b-x)**cr dx``."""
    length = b - a
    if cl == 0 and cr == 0:
        x, w = _uniform_segment(a, b, h0, npp)
        return x, w.astype(complex)
    xs, ws = [], []
    if cl != 0 and cr != 0:
        split = 0.5 * length
    elif cl != 0:
        split = length
    else:
        split = 0.0
    if cl != 0:
        dl, wl = _graded_segment(split, h0, npp, cl, levels)
        xs.append(a + dl)
        ws.append(wl * (length - dl) ** cr if cr != 0 else wl)
    if cr != 0:
        dr, wr = _graded_segment(length - split, h0, npp, cr, levels)
        xs.append(b - dr)
        ws.append(wr * (length - dr) ** cl if cl != 0 else wr)
    return np.concatenate(xs), np.concatenate(ws)


def _converged(err, value, rule: QuadratureRule) -> bool:
    return bool(np.all(err <= np.maximum(rule.abs_tol, rule.rel_tol * np.abs(value))))


def integrate_1d(
    integrand: Integrand,
    interval: tuple[float, float],
    rule: QuadratureRule = DEFAULT_RULE,
    weight_powers: tuple[complex, complex] = (0, 0),
) -> QuadResult:
    """Integrate ``integrand(x) * (x-a)**cl * (b-x)**cr`` over ``[a, b]``.

    ``weight_powers = (cl, cr)`` is the endpoint-singularity hint: declare the
    singular factor there and pass only the smooth remainder as
    ``integrand``.  Distances to a singular endpoint are generated exactly,
    which keeps full relative accuracy for powers close to ``-1``.

    Raises :class:`ConvergenceError` when two successive panel doublings
    still disagree by more than the rule's tolerance.
    """
    a, b = float(interval[0]), float(interval[1])
    if not b > a:
        raise DomainError(f"empty or reversed interval {interval}")
    cl, cr = complex(weight_powers[0]), complex(weight_powers[1])
    if cl.real <= -1 or cr.real <= -1:
        raise DomainError("endpoint powers must have real part > -1")
    npp = rule.nodes_per_panel
    h0 = (b - a) / rule.panels
    evals = 0

    def estimate(h):
        nonlocal evals
        x, w = _plan(a, b, h, npp, cl, cr, rule.grading_levels)
        evals += x.size
        return np.asarray(integrand(x)) @ w

    prev = estimate(h0)
    for _ in range(rule.max_refinements):
        h0 /= 2.0
        cur = estimate(h0)
        err = np.abs(cur - prev)
        if _converged(err, cur, rule):
            return QuadResult(_squeeze(cur), float(np.max(err)), evals)
        prev = cur
    raise ConvergenceError(
        f"integrate_1d on [{a}, {b}] did not converge (error {np.max(err):.3e})"
    )


def _squeeze(v):
    v = np.asarray(v)
    return complex(v) if v.ndim == 0 else v


def integrate_piecewise(
    integrand: Integrand,
    breakpoints: list[float],
    rule: QuadratureRule = DEFAULT_RULE,
    powers: list[complex] | None = None,
) -> QuadResult:
    """Sum of :func:`integrate_1d` over consecutive breakpoints.

    ``powers[i]`` is the singular power of ``|x - breakpoints[i]|`` attached
    on both sides of that breakpoint; ``integrand`` must already have that
    factor divided out.
    """
    pts = [float(p) for p in breakpoints]
    powers = list(powers) if powers is not None else [0] * len(pts)
    total, err, evals = 0j, 0.0, 0
    for i in range(len(pts) - 1):
        if pts[i + 1] <= pts[i]:
            continue
        res = integrate_1d(integrand, (pts[i], pts[i + 1]), rule, (powers[i], powers[i + 1]))
        total = total + res.value
        err += res.error
        evals += res.evaluations
    return QuadResult(_squeeze(total), err, evals)


_MAX_SHELL_PANELS = 1 << 18


def integrate_oscillatory(
    amplitude: Integrand,
    frequency: float,
    power: complex | float | ComplexParam,
    rule: QuadratureRule = DEFAULT_RULE,
    *,
    bandwidth: float = 0.0,
    check_tail: bool = True,
) -> OscillatoryResult:
    """Compute ``∫ exp(-2πi f r) A(r) |r|**p dr`` over the real line, shell by shell.

    The line is split into dyadic shells ``2**(j-1) <= |r| < 2**j`` for ``j``
    in ``rule.dyadic_range``; each shell (both signs of ``r``) is integrated
    by the composite Gauss-Legendre rule with enough panels to resolve
    ``|f| + bandwidth`` oscillations, where ``bandwidth`` is the highest
    frequency carried by ``A`` itself.  The region inside the smallest shell
    is added from the leading-order behaviour of ``A`` there.

    Shells whose magnitude bound is negligible are skipped and their bound is
    added to ``tail_estimate``, together with the last computed shell.
    With ``check_tail`` a tail estimate above tolerance raises
    :class:`ConvergenceError`.
    """
    p = complex(power)
    if p.real <= -1:
        raise DomainError("need Re p > -1 for integrability at r = 0")
    j_min, j_max = rule.dyadic_range
    two_pi_f = 2.0 * np.pi * float(frequency)
    freq = abs(float(frequency)) + abs(float(bandwidth))
    skip_level = rule.abs_tol * 1e-6
    shells = np.zeros(j_max - j_min + 1, dtype=complex)
    skipped = 0.0

    def shell_integrand(r):
        rp = r ** p
        return rp * (amplitude(r) * np.exp(-1j * two_pi_f * r) + amplitude(-r) * np.exp(1j * two_pi_f * r))

    probe = np.linspace(0.0, 1.0, 65)
    for idx, j in enumerate(range(j_min, j_max + 1)):
        lo, hi = math.ldexp(1.0, j - 1), math.ldexp(1.0, j)
        r = lo + (hi - lo) * probe
        envelope = (hi - lo) * float(
            np.max((np.abs(amplitude(r)) + np.abs(amplitude(-r))) * r ** p.real)
        )
        if envelope < skip_level:
            skipped += envelope
            continue
        panels = max(rule.panels, math.ceil(2.0 * (hi - lo) * freq))
        if panels > _MAX_SHELL_PANELS:
            raise ConvergenceError(f"shell j={j} needs {panels} panels")
        shells[idx] = integrate_1d(shell_integrand, (lo, hi), rule.with_(panels=panels)).value

    h = math.ldexp(1.0, j_min - 1)
    edge = np.array([h, -h])
    a_edge = np.asarray(amplitude(edge), dtype=complex)
    core = complex(a_edge.sum() * h ** (p + 1.0) / (p + 1.0))

    value = complex(shells.sum()) + core
    tail = abs(shells[-1]) + skipped
    if check_tail and tail > max(rule.abs_tol, rule.rel_tol * abs(value)):
        raise ConvergenceError(f"dyadic tail estimate {tail:.3e} exceeds tolerance")
    return OscillatoryResult(value, tail, shells, (j_min, j_max))
