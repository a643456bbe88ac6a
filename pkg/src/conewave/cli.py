"""``conewave`` command line: verify, table, apply, norms.

Exit status: 0 when everything requested succeeded and passed, 1 when a check
failed or a field could not be resolved on its grid, 2 for usage and input
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import math
import os
import re
import sys
from typing import Callable, Sequence

import numpy as np

from . import bessel, cone, radial, suites
from .cone import ConePoint
from .errors import ConeSingularityError, ConewaveError, DomainError, FieldFormatError, GridAliasError
from .fieldio import read_field, write_field
from .operators import (
    GridMeta,
    MultiplierSpec,
    TestFunction,
    apply_multiplier,
    default_test_family,
    multiplier_on_grid,
    operator_norm_estimate,
)
from .report import CSV_HEADER, fmt

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
P_RANGE = (1.2, 6.0)


class UsageError(Exception):
    """Bad flags or inputs; reported on stderr with exit status 2."""


# --- argument parsing helpers -----------------------------------------------------


def parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"not a number: {text!r}") from exc


def parse_values(text: str, real: bool = False) -> list:
    """``a:b:step`` (inclusive, real only), a comma list, or a single value."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range must be start:stop:step, got {text!r}")
        try:
            a, b, h = (float(p) for p in parts)
        except ValueError as exc:
            raise UsageError(f"bad range {text!r}") from exc
        if h <= 0 or b < a:
            raise UsageError(f"bad range {text!r}")
        count = int(math.floor((b - a) / h + 1e-9)) + 1
        # round away the k·h representation noise so grid nodes print cleanly
        digits = 12 + max(0, -math.floor(math.log10(h)))
        return [round(a + k * h, digits) for k in range(count)]
    vals = [parse_complex(v) for v in text.split(",") if v.strip()]
    if not vals:
        raise UsageError("empty value list")
    if real:
        if any(v.imag for v in vals):
            raise UsageError(f"expected real values, got {text!r}")
        return [v.real for v in vals]
    return vals


def parse_override(text: str) -> tuple[str, float]:
    key, sep, val = text.partition("=")
    if not sep or not key:
        raise UsageError(f"override must look like id=value, got {text!r}")
    try:
        return key.strip(), float(val)
    except ValueError as exc:
        raise UsageError(f"bad tolerance in {text!r}") from exc


def _number(x: float) -> str:
    return fmt(float(x))


def _param_text(v) -> str:
    v = complex(v)
    if v.imag == 0:
        return _number(v.real)
    return f"{fmt(v.real)}{'+' if v.imag >= 0 else '-'}{fmt(abs(v.imag))}i"


def _check_threads() -> None:
    raw = os.environ.get("CONEWAVE_THREADS", "").strip()
    if raw and not (raw.isdigit()):
        raise UsageError(f"CONEWAVE_THREADS must be a non-negative integer, got {raw!r}")


# --- verify -----------------------------------------------------------------------------


def cmd_verify(args) -> int:
    overrides = dict(parse_override(t) for t in args.tolerance_override)
    unknown = sorted(set(overrides) - set(suites.formula_ids()))
    if unknown:
        raise UsageError(f"unknown formula id(s): {', '.join(unknown)}")
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")

    def echo(rep):
        out.write(rep.csv_row() + "\n")
        if not args.quiet:
            print(rep.summary(), file=sys.stderr)

    reports = suites.run_suite(args.suite, overrides, args.seed, echo)
    _emit(out.getvalue(), args.output)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


# --- table ---------------------------------------------------------------------------------

TableFn = Callable[..., complex]


def _lambda_value(route: str, eps_cone: float):
    def value(alpha, xi, tau):
        p = ConePoint(float(xi), float(tau))
        if route == "oscillatory":
            return cone.lambda_hat_oscillatory(alpha, p)
        return cone.lambda_hat_closed(alpha, p, eps_cone=eps_cone)

    return value


TABLE_FORMULAS: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    # formula: (parameter flags in column order, parameters that must be real)
    "omega_hat": (("n", "z", "xi"), ("n", "xi")),
    "omega_kernel": (("r",), ("r",)),
    "lambda_hat": (("alpha", "xi", "tau"), ("xi", "tau")),
    "bessel_j": (("nu", "rho"), ("rho",)),
    "m_alpha": (("alpha", "xi"), ("xi",)),
    "p_hat": (("alpha", "xi"), ("xi",)),
}


def _table_fn(name: str, args) -> TableFn:
    if name == "omega_hat":
        return lambda n, z, xi: radial.omega_hat(radial.OmegaSpec(z, int(n)), xi)
    if name == "omega_kernel":
        return lambda r: cone.omega_kernel(r)
    if name == "lambda_hat":
        return _lambda_value(args.route, args.eps_cone)
    if name == "bessel_j":
        return lambda nu, rho: bessel.bessel_j(nu, rho)
    if name == "m_alpha":
        return lambda alpha, xi: cone.m_alpha(alpha, xi)
    return lambda alpha, xi: cone.p_hat_closed(alpha, xi)


def cmd_table(args) -> int:
    if args.formula not in TABLE_FORMULAS:
        raise UsageError(f"unknown formula {args.formula!r}; known: {', '.join(TABLE_FORMULAS)}")
    names, real = TABLE_FORMULAS[args.formula]
    axes = []
    for name in names:
        text = getattr(args, name)
        if text is None:
            raise UsageError(f"--{name} is required for {args.formula}")
        axes.append(parse_values(text, real=name in real))
    if args.formula == "omega_hat" and any(n not in (1, 2) for n in axes[0]):
        raise UsageError("--n must be 1 or 2")
    fn = _table_fn(args.formula, args)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*names, "value_re", "value_im", "status"])
    for combo in itertools.product(*axes):
        label = [_param_text(v) for v in combo]
        try:
            v = complex(fn(*combo))
            writer.writerow([*label, _number(v.real), _number(v.imag), "ok"])
        except ConeSingularityError:
            writer.writerow([*label, "singular", "singular", "singular"])
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


# --- apply / norms --------------------------------------------------------------------------

FAMILY_NAMES = {"identity": "identity", "s-delta": "S-delta", "s-delta-psi": "S-delta-psi", "i-alpha": "I-alpha"}


def build_multiplier(family: str, param: complex) -> MultiplierSpec:
    key = family.lower()
    if key not in FAMILY_NAMES:
        raise UsageError(f"unknown family {family!r}; known: {', '.join(FAMILY_NAMES)}")
    if key == "identity":
        return MultiplierSpec.identity()
    try:
        return MultiplierSpec(FAMILY_NAMES[key], param)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _family_param(args) -> complex:
    if args.family.lower() == "i-alpha":
        return parse_complex(args.alpha) if args.alpha is not None else 0.75
    return parse_complex(args.delta) if args.delta is not None else 0.25


def cmd_apply(args) -> int:
    try:
        field = read_field(args.input)
    except FileNotFoundError as exc:
        raise UsageError(f"cannot read {args.input}") from exc
    if args.dim is not None and args.dim != field.grid.dim:
        raise UsageError(f"--dim {args.dim} does not match the file header (dim={field.grid.dim})")
    m = build_multiplier(args.family, _family_param(args))
    out = apply_multiplier(field, m)
    write_field(args.output, out)
    return EXIT_OK


def _test_family(kind: str, seed: int) -> list[TestFunction]:
    fam = default_test_family()
    if kind == "smooth":
        fam = [t for t in fam if t.kind != "band-limited"]
    return [TestFunction(t.kind, t.width, t.carrier, seed, t.band) if t.kind == "band-limited" else t for t in fam]


def cmd_norms(args) -> int:
    try:
        grid = GridMeta(args.dim, args.n, args.halfwidth)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    default_p = str(suites.SWEEP_P) if args.im_sweep is not None else "1.2,1.5,2,3,6"
    ps = parse_values(args.p if args.p is not None else default_p, real=True)
    if any(not (p >= 1) for p in ps):
        raise UsageError("every p must be >= 1")
    outside = [p for p in ps if not P_RANGE[0] <= p <= P_RANGE[1]]
    if outside:
        print(f"note: p outside the working range [{P_RANGE[0]}, {P_RANGE[1]}]: {outside}", file=sys.stderr)
    family = _test_family(args.tests, args.seed)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if args.im_sweep is not None:
        if args.family.lower() == "identity":
            raise UsageError("the sweep needs a parametrised family")
        if len(ps) != 1:
            raise UsageError("--im-sweep takes a single --p")
        ims = parse_values(args.im_sweep, real=True)
        base = parse_complex(args.re_delta) if args.re_delta is not None else _family_param(args)
        writer.writerow(["im_param", "ratio_max"])
        for t in ims:
            est = operator_norm_estimate(build_multiplier(args.family, complex(base.real, t)), ps[0], family, grid)
            writer.writerow([_number(t), _number(est.ratio_max)])
    else:
        m = build_multiplier(args.family, _family_param(args))
        writer.writerow(["p", "ratio_max", "family_size"])
        for p in ps:
            est = operator_norm_estimate(m, p, family, grid)
            writer.writerow([_number(p), _number(est.ratio_max), est.family_size])
        if args.show_sup:
            sup = float(np.max(np.abs(multiplier_on_grid(grid, m))))
            print(f"grid sup |m| = {sup:.17g}", file=sys.stderr)
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


# --- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conewave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite and write a CSV report")
    v.add_argument("--suite", default="all", choices=[*suites.SUITES, "all"])
    v.add_argument("--tolerance-override", action="append", default=[], metavar="ID=TOL")
    v.add_argument("--seed", type=lambda s: int(s, 0), default=suites.DEFAULT_SEED)
    v.add_argument("--output", "-o", default=None, help="CSV path (default: stdout)")
    v.add_argument("--quiet", "-q", action="store_true", help="no per-check lines on stderr")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="tabulate a formula over a parameter grid")
    t.add_argument("--formula", required=True)
    for name in ("n", "z", "xi", "r", "alpha", "tau", "nu", "rho"):
        t.add_argument(f"--{name}", default=None, help="value, comma list, or start:stop:step")
    t.add_argument("--route", choices=["closed", "oscillatory"], default="closed")
    t.add_argument("--eps-cone", type=float, default=cone.EPS_CONE)
    t.add_argument("--output", "-o", default=None)
    t.set_defaults(func=cmd_table)

    a = sub.add_parser("apply", help="apply a multiplier to a field file")
    a.add_argument("input")
    a.add_argument("output")
    a.add_argument("--family", default="s-delta-psi")
    a.add_argument("--delta", default=None)
    a.add_argument("--alpha", default=None)
    a.add_argument("--dim", type=int, default=None, help="expected dimension; must match the header")
    a.set_defaults(func=cmd_apply)

    n = sub.add_parser("norms", help="empirical Lp operator-norm estimates")
    n.add_argument("--family", default="s-delta-psi")
    n.add_argument("--delta", default=None)
    n.add_argument("--alpha", default=None)
    n.add_argument("--re-delta", default=None, help="real part of the parameter for --im-sweep")
    n.add_argument("--im-sweep", default=None, metavar="LIST", help="imaginary parts to sweep")
    n.add_argument("--p", default=None, help="exponents (default 1.2,1.5,2,3,6; 1.2 for --im-sweep)")
    n.add_argument("--tests", choices=["default", "smooth"], default="default")
    n.add_argument("--seed", type=lambda s: int(s, 0), default=suites.DEFAULT_SEED)
    n.add_argument("--dim", type=int, default=1)
    n.add_argument("--n", type=int, default=4096)
    n.add_argument("--halfwidth", type=float, default=32.0)
    n.add_argument("--show-sup", action="store_true", help="print the grid sup of |m| on stderr")
    n.add_argument("--output", "-o", default=None)
    n.set_defaults(func=cmd_norms)
    return parser


_NEGATIVE_VALUE = re.compile(r"^-[\d.]")


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--flag -1:2:0.5`` as ``--flag=-1:2:0.5`` so ranges may start below zero."""
    out: list[str] = []
    for tok in argv:
        if out and _NEGATIVE_VALUE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _attach_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        _check_threads()
        return args.func(args)
    except (UsageError, FieldFormatError) as exc:
        print(f"conewave: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GridAliasError as exc:
        print(f"conewave: grid alias: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ConewaveError as exc:
        print(f"conewave: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
