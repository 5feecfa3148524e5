import json
import math

import pytest

from glvoronoi.cli import RunConfig, main


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


# -------------------------------------------------------------------- sum

def test_sum_classical_kloosterman(capsys):
    code, out, _ = run(capsys, "sum", "--a", "1", "--b", "1", "--q", "5",
                       "--c", "1", "--d", "1")
    assert code == 0
    assert out.strip() == "0.381966011250"


def test_sum_counts_units(capsys):
    # a = b = 0 degenerates to counting units mod q
    code, out, _ = run(capsys, "sum", "--a", "0", "--b", "0", "--q", "7",
                       "--c", "1", "--d", "1")
    assert code == 0
    assert abs(float(out.strip()) - 6.0) < 1e-12


def test_sum_with_chain_and_check(capsys):
    code, out, _ = run(capsys, "sum", "--a", "1", "--b", "1", "--q", "6",
                       "--c", "1", "--d", "1", "--check")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("-1.0")
    assert "ok" in lines[1]


def test_sum_complex_output(capsys):
    # two-level chain with a complex value
    code, out, _ = run(capsys, "sum", "--a", "1", "--b", "1", "--q", "6",
                       "--c", "1", "--c", "1", "--d", "1", "--d", "1")
    assert code == 0
    assert "j" in out or "-" in out  # rendered as complex
    v = complex(out.strip().replace(" ", ""))
    assert abs(v - complex(0.5, -2.5980762113533159)) < 1e-9


def test_sum_rejects_bad_chain(capsys):
    code, _, err = run(capsys, "sum", "--a", "1", "--b", "1", "--q", "4",
                       "--c", "1", "--d", "3")
    assert code == 2
    assert "error:" in err


# ----------------------------------------------------------------- verify

def test_verify_gl2_q1(capsys):
    code, out, err = run(capsys, "verify", "--form", "delta", "--q", "1",
                         "--a", "0", "--X", "4", "--c", "")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert doc["instance"]["q"] == 1
    assert doc["wall_time_ms"] is None
    assert "PASS" in err


def test_verify_numeric_failure_exit_code(capsys):
    code, out, err = run(capsys, "verify", "--form", "delta", "--q", "2",
                         "--a", "1", "--X", "4", "--c", "", "--tolerance", "1e-20")
    assert code == 1
    assert json.loads(out)["passed"] is False
    assert "FAIL" in err


def test_verify_structural_error_exit_code(capsys):
    code, _, err = run(capsys, "verify", "--form", "delta", "--q", "4",
                       "--a", "2", "--X", "4", "--c", "")
    assert code == 2
    assert "error:" in err


def test_verify_timing_flag(capsys):
    code, out, _ = run(capsys, "verify", "--form", "delta", "--q", "1",
                       "--a", "0", "--X", "4", "--c", "", "--timing")
    assert code == 0
    assert isinstance(json.loads(out)["wall_time_ms"], float)


def test_verify_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--form", "delta", "--q", "1",
                       "--a", "0", "--X", "4", "--c", "", "--out", str(path))
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text())["passed"] is True


def test_verify_sym2(capsys):
    code, out, _ = run(capsys, "verify", "--form", "sym2-delta", "--q", "2",
                       "--a", "1", "--c", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert doc["instance"]["c"] == [1]


# -------------------------------------------------------------- transform

def test_transform_n1_closed_form(capsys):
    code, out, _ = run(capsys, "transform", "--n", "1", "--X", "1",
                       "--y", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "y,ReF,ImF,est_err"
    y, re, im, est = lines[1].split(",")
    assert abs(float(re) - math.exp(-math.pi)) < 1e-10
    assert abs(float(im)) < 1e-12


def test_transform_header_only(capsys):
    code, out, _ = run(capsys, "transform", "--n", "1", "--X", "1", "--y", "")
    assert code == 0
    assert out.strip() == "y,ReF,ImF,est_err"


def test_transform_contour_error(capsys):
    code, _, err = run(capsys, "transform", "--form", "sym2-delta",
                       "--y", "1", "--s0", "50.0")
    assert code == 2
    assert "error:" in err


# ----------------------------------------------------------------- coeffs

def test_coeffs_delta(capsys):
    code, out, _ = run(capsys, "coeffs", "--form", "delta", "--max", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,tau,a"
    rows = [l.split(",") for l in lines[1:]]
    assert [r[0] for r in rows] == ["1", "2", "3", "4", "5"]
    assert [r[1] for r in rows] == ["1", "-24", "252", "-1472", "4830"]
    assert abs(float(rows[1][2]) - (-24 / 2**5.5)) < 1e-12


def test_coeffs_delta_arch_params(capsys):
    code, out, _ = run(capsys, "coeffs", "--form", "delta", "--max", "3",
                       "--arch-params")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,tau,a,c"
    # c recovers tau exactly under the shipped normalization
    assert [l.split(",")[3] for l in lines[1:]] == ["1", "-24", "252"]


def test_coeffs_sym2(capsys):
    code, out, _ = run(capsys, "coeffs", "--form", "sym2-delta", "--max", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k1,k2,a"
    got = {(int(r[0]), int(r[1])): float(r[2])
           for r in (l.split(",") for l in lines[1:])}
    assert set(got) == {(1, 1), (1, 2), (2, 1), (2, 2)}
    assert abs(got[(1, 2)] - (-0.71875)) < 1e-12


def test_coeffs_max_one(capsys):
    code, out, _ = run(capsys, "coeffs", "--form", "delta", "--max", "1")
    assert code == 0
    assert out.strip().splitlines() == ["k,tau,a", "1,1,1"]


# ----------------------------------------------------------------- config

def test_config_roundtrip_fixpoint():
    cfg = RunConfig(form="sym2-delta", q=3, a=2, c="1", x=3.0, rel_tol=1e-6)
    text = cfg.to_ini()
    back = RunConfig.from_ini(text)
    assert back == cfg
    assert back.to_ini() == text


def test_config_unknown_key_rejected():
    with pytest.raises(ValueError):
        RunConfig.from_ini("[instance]\nbogus = 3\n")


def test_config_file_and_override(tmp_path, capsys):
    path = tmp_path / "run.ini"
    path.write_text(RunConfig(form="delta", q=2, a=1, c="", x=4.0).to_ini())
    code, out, _ = run(capsys, "verify", "--config", str(path))
    assert code == 0
    assert json.loads(out)["instance"]["q"] == 2
    # command-line flags win over the file
    code, out, _ = run(capsys, "verify", "--config", str(path), "--q", "1",
                       "--a", "0")
    assert code == 0
    assert json.loads(out)["instance"]["q"] == 1


def test_config_env_var(tmp_path, capsys, monkeypatch):
    path = tmp_path / "env.ini"
    path.write_text(RunConfig(form="delta", q=2, a=1, c="", x=4.0).to_ini())
    monkeypatch.setenv("GLVORONOI_CONFIG", str(path))
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert json.loads(out)["instance"]["q"] == 2


def test_bad_config_path(capsys):
    code, _, err = run(capsys, "verify", "--config", "/nonexistent/x.ini")
    assert code == 2
    assert "error:" in err
