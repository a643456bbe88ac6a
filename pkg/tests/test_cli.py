import csv
import io
import os
import subprocess
import sys
from importlib import resources

import numpy as np
import pytest

from conewave.cli import main, parse_values
from conewave.fieldio import read_field, write_field
from conewave.operators import GridMeta, TestFunction

DATA = resources.files("conewave") / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_range_parsing():
    assert len(parse_values("0:3:0.05")) == 61
    assert parse_values("0:1:0.1")[-1] == 1.0
    assert parse_values("1,2+1i") == [1, 2 + 1j]


# --- verify ----------------------------------------------------------------------------


def test_verify_bessel_rows(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "bessel", "--quiet")
    assert code == 0
    ids = [r["formula_id"] for r in rows(out)]
    for needed in ("bessel_cross_route", "j_asymptotic", "j_identity", "j_norm"):
        assert needed in ids
    assert out.splitlines()[0] == "formula_id,points,max_abs_err,max_rel_err,tolerance,pass"


def test_verify_output_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "verify", "--suite", "operators", "-q", "-o", str(a))[0] == 0
    assert run(capsys, "verify", "--suite", "operators", "-q", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_override_recorded(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "appendix-b", "-q", "--tolerance-override", "q_transform=1e-3")
    assert code == 0
    (row,) = [r for r in rows(out) if r["formula_id"] == "q_transform"]
    assert row["tolerance"] == "0.001" and row["pass"] == "true"


def test_verify_failing_override_exits_one(capsys):
    code, out, err = run(capsys, "verify", "--suite", "appendix-b", "--tolerance-override", "q_transform=1e-30")
    assert code == 1
    assert "FAIL q_transform" in err
    assert any(r["pass"] == "false" for r in rows(out))


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "appendix-b", "--tolerance-override", "unknown_id=1e-3"],
        ["verify", "--suite", "appendix-b", "--tolerance-override", "q_transform"],
        ["verify", "--suite", "nonsense"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_thread_variable_validated(capsys, monkeypatch):
    monkeypatch.setenv("CONEWAVE_THREADS", "lots")
    assert run(capsys, "verify", "--suite", "appendix-b", "-q")[0] == 2
    monkeypatch.setenv("CONEWAVE_THREADS", "1")
    assert run(capsys, "verify", "--suite", "appendix-b", "-q")[0] == 0


# --- table --------------------------------------------------------------------------------


def test_table_omega_hat_row_count(capsys):
    code, out, _ = run(capsys, "table", "--formula", "omega_hat", "--n", "1", "--z", "0.5", "--xi", "0:3:0.05")
    assert code == 0
    table = rows(out)
    assert len(table) == 61
    assert table[0]["value_re"] == "1.0"  # Ω̂^{1/2}(0) = 1 in one dimension


def test_table_omega_kernel_origin(capsys):
    code, out, _ = run(capsys, "table", "--formula", "omega_kernel", "--r", "-10:10:0.1")
    assert code == 0
    table = rows(out)
    assert len(table) == 201
    (origin,) = [r for r in table if float(r["r"]) == 0.0]
    assert origin["value_re"] == "0.5" and origin["value_im"] == "0.0"


def test_table_lambda_marks_singular_rows(capsys):
    code, out, _ = run(capsys, "table", "--formula", "lambda_hat", "--alpha", "0.75", "--xi", "1", "--tau", "0:3:0.02")
    assert code == 0
    table = rows(out)
    singular = [r["tau"] for r in table if r["status"] == "singular"]
    assert singular == ["1.0"]
    assert all(r["status"] == "ok" for r in table if r["tau"] != "1.0")


def test_table_unknown_formula_and_missing_flag(capsys):
    assert run(capsys, "table", "--formula", "zeta")[0] == 2
    assert run(capsys, "table", "--formula", "omega_hat", "--n", "1")[0] == 2


# --- apply ---------------------------------------------------------------------------------


def test_apply_identity_round_trip(tmp_path, capsys):
    src = tmp_path / "in.txt"
    dst = tmp_path / "out.txt"
    write_field(src, TestFunction("band-limited").sample(GridMeta(1, 512, 8.0)))
    assert run(capsys, "apply", str(src), str(dst), "--family", "identity")[0] == 0
    assert np.max(np.abs(read_field(dst).values - read_field(src).values)) <= 1e-15


def test_apply_matches_golden(tmp_path, capsys):
    dst = tmp_path / "out.txt"
    with resources.as_file(DATA / "gaussian_field.txt") as src:
        code = run(capsys, "apply", str(src), str(dst), "--family", "s-delta-psi", "--delta", "0.25")[0]
    assert code == 0
    with resources.as_file(DATA / "golden_s_delta_psi.txt") as gold:
        expected = read_field(gold).values
    assert np.max(np.abs(read_field(dst).values - expected)) < 1e-9


def test_apply_is_idempotent(tmp_path, capsys):
    src = tmp_path / "in.txt"
    write_field(src, TestFunction("gaussian", 2.0).sample(GridMeta(1, 1024, 32.0)))
    outs = []
    for name in ("a.txt", "b.txt"):
        assert run(capsys, "apply", str(src), str(tmp_path / name), "--delta", "0.25+0.5i")[0] == 0
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]


def test_apply_errors(tmp_path, capsys):
    src = tmp_path / "in.txt"
    write_field(src, TestFunction("gaussian", 2.0).sample(GridMeta(1, 1024, 32.0)))
    assert run(capsys, "apply", str(src), str(tmp_path / "o.txt"), "--dim", "2")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("conewave-field v9\n1 0\n")
    assert run(capsys, "apply", str(bad), str(tmp_path / "o.txt"))[0] == 2
    assert run(capsys, "apply", str(tmp_path / "missing.txt"), str(tmp_path / "o.txt"))[0] == 2
    narrow = tmp_path / "narrow.txt"
    write_field(narrow, TestFunction("gaussian", 0.05).sample(GridMeta(1, 256, 8.0)))
    assert run(capsys, "apply", str(narrow), str(tmp_path / "o.txt"))[0] == 1


# --- norms ------------------------------------------------------------------------------------


def test_norms_identity_is_one(capsys):
    code, out, _ = run(capsys, "norms", "--family", "identity")
    assert code == 0
    table = rows(out)
    assert [r["p"] for r in table] == ["1.2", "1.5", "2.0", "3.0", "6.0"]
    for r in table:
        assert float(r["ratio_max"]) == pytest.approx(1.0, rel=1e-12)
        assert r["family_size"] == "8"


def test_norms_plancherel(capsys):
    code, out, err = run(capsys, "norms", "--family", "s-delta", "--delta", "0.25", "--p", "2", "--show-sup")
    assert code == 0
    sup = float(err.strip().split("=")[-1])
    assert float(rows(out)[0]["ratio_max"]) <= sup + 1e-10


def test_norms_im_sweep_non_decreasing(capsys):
    code, out, _ = run(capsys, "norms", "--family", "s-delta-psi", "--re-delta", "0.25", "--im-sweep", "0,0.5,1")
    assert code == 0
    values = [float(r["ratio_max"]) for r in rows(out)]
    assert list(rows(out)[0]) == ["im_param", "ratio_max"]
    assert len(values) == 3 and values == sorted(values)


def test_norms_bad_p(capsys):
    assert run(capsys, "norms", "--p", "0.5")[0] == 2
    code, _, err = run(capsys, "norms", "--family", "identity", "--p", "8")
    assert code == 0 and "outside the working range" in err


def test_console_entry_point_runs():
    env = dict(os.environ, CONEWAVE_THREADS="0")
    proc = subprocess.run(
        [sys.executable, "-m", "conewave", "table", "--formula", "omega_kernel", "--r", "0"],
        capture_output=True,
        text=True,
        env=env,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "0.0,0.5,0.0,ok"
