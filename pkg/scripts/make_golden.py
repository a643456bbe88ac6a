"""Regenerate the bundled gaussian field and its golden S-delta-psi output.

The golden values come from frequency-domain quadrature at every grid
point, never from the FFT path they are later compared with.

    python3 scripts/make_golden.py
"""

from pathlib import Path

import numpy as np

from conewave.fieldio import write_field
from conewave.operators import GridMeta, MultiplierSpec, SampledField, TestFunction, direct_quadrature_oracle
from conewave.suites import GOLDEN_DELTA

# A wide box keeps the periodic images of the slowly decaying output below
# 1e-10, so the FFT result can be held to the oracle at 1e-9.
GRID = GridMeta(1, 4096, 128.0)
FIELD = TestFunction("gaussian", 2.5)
DATA = Path(__file__).resolve().parents[1] / "src" / "conewave" / "data"


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    write_field(DATA / "gaussian_field.txt", FIELD.sample(GRID))
    m = MultiplierSpec("S-delta-psi", GOLDEN_DELTA)
    x = GRID.axis()
    values = np.concatenate([direct_quadrature_oracle(FIELD, m, x[i : i + 256]) for i in range(0, x.size, 256)])
    write_field(DATA / "golden_s_delta_psi.txt", SampledField(GRID, values))


if __name__ == "__main__":
    main()
