import numpy as np
import pytest

from conewave.errors import FieldFormatError
from conewave.fieldio import format_header, parse_header, read_field, write_field
from conewave.operators import GridMeta, SampledField, TestFunction


def test_round_trip_is_exact(tmp_path):
    g = GridMeta(2, 64, 3.5)
    f = TestFunction("band-limited", band=2.0).sample(g)
    path = tmp_path / "f.txt"
    write_field(path, f)
    back = read_field(path)
    assert back.grid == g
    assert np.array_equal(back.values, f.values)


def test_header_format():
    assert format_header(GridMeta(1, 4096, 32.0)) == "conewave-field v1 dim=1 n=4096 L=32.0"
    assert parse_header("conewave-field v1 dim=2 n=256 L=16\n") == GridMeta(2, 256, 16.0)


@pytest.mark.parametrize(
    "text",
    [
        "conewave-field v2 dim=1 n=64 L=1\n",
        "conewave-field v1 dim=3 n=64 L=1\n",
        "conewave-field v1 dim=1 n=100 L=1\n",
        "conewave-field v1 dim=1 n=64 L=-1\n",
        "garbage\n",
    ],
)
def test_bad_headers(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text + "0 0\n" * 64)
    with pytest.raises(FieldFormatError):
        read_field(path)


def test_wrong_count_and_non_numeric(tmp_path):
    path = tmp_path / "short.txt"
    path.write_text("conewave-field v1 dim=1 n=64 L=1\n" + "1 0\n" * 63)
    with pytest.raises(FieldFormatError):
        read_field(path)
    path.write_text("conewave-field v1 dim=1 n=64 L=1\n" + "1 x\n" * 64)
    with pytest.raises(FieldFormatError):
        read_field(path)
    path.write_text("conewave-field v1 dim=1 n=64 L=1\n" + "nan 0\n" * 64)
    with pytest.raises(FieldFormatError):
        read_field(path)


def test_row_major_order(tmp_path):
    g = GridMeta(2, 64, 1.0)
    vals = np.arange(64 * 64).reshape(64, 64) + 0j
    path = tmp_path / "f.txt"
    write_field(path, SampledField(g, vals))
    lines = path.read_text().splitlines()
    assert lines[2].split() == ["1", "0"]
    assert lines[65].split() == ["64", "0"]
