"""Structured pass/fail results shared by every verification check."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

NEAR_ZERO = 1e-14

CSV_HEADER = "formula_id,points,max_abs_err,max_rel_err,tolerance,pass"


def fmt(x: float) -> str:
    """Shortest text that reads back to the identical float (at most 17 significant digits)."""
    return repr(float(x))


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity check.

    ``max_rel_err`` is the pass metric: the relative error at points whose
    target magnitude exceeds ``1e-14`` and the absolute error elsewhere.  For
    checks built with ``relative=False`` it is the absolute error throughout.
    """

    formula_id: str
    points: int
    max_abs_err: float
    max_rel_err: float
    tolerance: float
    passed: bool
    constants: Mapping[str, float] = field(default_factory=dict)

    @classmethod
    def compare(
        cls,
        formula_id: str,
        computed,
        expected,
        tolerance: float,
        constants: Mapping[str, float] | None = None,
        relative: bool = True,
    ) -> VerificationReport:
        c = np.atleast_1d(np.asarray(computed, dtype=complex)).ravel()
        e = np.atleast_1d(np.asarray(expected, dtype=complex)).ravel()
        if c.shape != e.shape:
            raise ValueError("computed and expected must have the same number of points")
        abs_err = np.abs(c - e)
        if relative:
            mag = np.abs(e)
            metric = np.where(mag > NEAR_ZERO, abs_err / np.where(mag > NEAR_ZERO, mag, 1.0), abs_err)
        else:
            metric = abs_err
        abs_max = float(np.max(abs_err)) if c.size else 0.0
        metric_max = float(np.max(metric)) if c.size else 0.0
        if np.isnan(metric_max):
            metric_max = float("inf")
        return cls(
            formula_id,
            int(c.size),
            abs_max,
            metric_max,
            float(tolerance),
            bool(metric_max <= tolerance),
            dict(constants or {}),
        )

    @classmethod
    def combine(cls, formula_id: str, parts: Sequence[VerificationReport], tolerance: float | None = None) -> VerificationReport:
        """Merge several reports into one row: worst errors, all points, prefixed constants."""
        if not parts:
            raise ValueError("nothing to combine")
        tol = parts[0].tolerance if tolerance is None else float(tolerance)
        constants: dict[str, float] = {}
        for i, p in enumerate(parts):
            constants.update({f"{i}.{k}": v for k, v in p.constants.items()})
        worst = max(p.max_rel_err for p in parts)
        # a part that failed although its metric met its own tolerance failed a
        # structural condition, which no tolerance can rescue
        structural = any(not p.passed and p.max_rel_err <= p.tolerance for p in parts)
        return cls(
            formula_id,
            sum(p.points for p in parts),
            max(p.max_abs_err for p in parts),
            worst,
            tol,
            bool(worst <= tol and not structural),
            constants,
        )

    def with_tolerance(self, tolerance: float) -> VerificationReport:
        return replace(self, tolerance=float(tolerance), passed=bool(self.max_rel_err <= tolerance))

    def csv_row(self) -> str:
        return ",".join(
            [
                self.formula_id,
                str(self.points),
                fmt(self.max_abs_err),
                fmt(self.max_rel_err),
                fmt(self.tolerance),
                "true" if self.passed else "false",
            ]
        )

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "".join(f" {k}={v:.6g}" for k, v in self.constants.items())
        return (
            f"{status} {self.formula_id}: points={self.points} max_abs_err={self.max_abs_err:.3e} "
            f"max_rel_err={self.max_rel_err:.3e} tol={self.tolerance:.1e}{extra}"
        )
