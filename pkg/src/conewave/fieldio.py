"""Plain-text field container.

Layout: one header line ``conewave-field v1 dim=<d> n=<N> L=<halfwidth>``
followed by ``N**d`` whitespace-separated ``re im`` pairs in row-major order.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .errors import DomainError, FieldFormatError
from .operators import GridMeta, SampledField

__all__ = ["read_field", "write_field", "format_header", "parse_header"]

_HEADER = re.compile(r"^conewave-field v1 dim=(\d+) n=(\d+) L=(\S+)\s*$")


def format_header(grid: GridMeta) -> str:
    return f"conewave-field v1 dim={grid.dim} n={grid.n} L={grid.halfwidth!r}"


def parse_header(line: str) -> GridMeta:
    match = _HEADER.match(line.strip())
    if not match:
        raise FieldFormatError(f"bad field header: {line.strip()[:80]!r}")
    try:
        return GridMeta(int(match[1]), int(match[2]), float(match[3]))
    except (ValueError, DomainError) as exc:
        raise FieldFormatError(f"bad field header: {exc}") from exc


def write_field(path: str | Path, field: SampledField) -> None:
    flat = field.values.reshape(-1)
    pairs = np.column_stack([flat.real, flat.imag])
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_header(field.grid) + "\n")
        np.savetxt(fh, pairs, fmt="%.17g")


def read_field(path: str | Path) -> SampledField:
    """Parse a field file, raising :class:`FieldFormatError` on any structural problem."""
    with open(path, encoding="ascii", errors="replace") as fh:
        grid = parse_header(fh.readline())
        try:
            numbers = np.array(fh.read().split(), dtype=float)
        except ValueError as exc:
            raise FieldFormatError("non-numeric field data") from exc
    expected = 2 * grid.n**grid.dim
    if numbers.size != expected:
        raise FieldFormatError(f"expected {expected} numbers after the header, found {numbers.size}")
    values = (numbers[0::2] + 1j * numbers[1::2]).reshape(grid.shape)
    try:
        return SampledField(grid, values)
    except DomainError as exc:
        raise FieldFormatError(str(exc)) from exc
