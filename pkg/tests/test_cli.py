import json
import subprocess
import sys

import pytest

from extreme_zeros.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds_laguerre_table(capsys):
    code, out, _ = run(capsys, "bounds", "--family", "laguerre", "--k", "1", "--alpha", "0")
    assert code == 0
    assert "0.6914435792" in out and "2.375489807" in out


def test_bessel(capsys):
    code, out, _ = run(capsys, "bessel", "--nu", "0", "--format", "json")
    row = json.loads(out)[0]
    assert code == 0 and row["pass"] is True
    assert row["bound"] == pytest.approx(2.0809690925) and row["oracle"] == pytest.approx(2.404825558)


def test_hypothesis_error_exits_2(capsys):
    code, _, err = run(capsys, "bounds", "--family", "jacobi", "--k", "3", "--alpha", "0", "--beta", "0.5")
    assert code == 2 and "Jacobi closed-form bound requires alpha >= beta" in err


def test_symmetric_flag(capsys):
    code, out, _ = run(capsys, "bounds", "--family", "jacobi", "--k", "3", "--alpha", "0", "--beta", "0.5",
                       "--symmetric", "--method", "closed", "--format", "json")
    assert code == 0 and json.loads(out)[0]["flags"] == ["hypothesis_swapped"]


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--family", "laguerre", "--k", "2", "--alpha", "-1"],
        ["bounds", "--family", "laguerre", "--k", "0"],
        ["bounds", "--family", "chebyshev", "--k", "2"],
        ["bounds", "--family", "laguerre"],
        ["frobnicate"],
        [],
        ["bessel", "--nu", "-0.7"],
        ["zeros", "--family", "laguerre", "--k", "5000"],
        ["bounds", "--family", "laguerre", "--k", "3", "--method", "resultant"],
        ["sharpness", "--family", "hermite", "--ks", "a,b"],
    ],
)
def test_usage_and_domain_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_json_formats_parse(capsys):
    for argv in (
        ["bounds", "--family", "hermite", "--k", "50"],
        ["zeros", "--family", "jacobi", "--k", "4", "--alpha", "1", "--beta", "0.5"],
        ["spacing", "--family", "hermite", "--k", "6", "--mu", "1"],
        ["sharpness", "--family", "hermite", "--ks", "10,100"],
    ):
        code, out, _ = run(capsys, *argv, "--format", "json")
        assert code == 0 and isinstance(json.loads(out), list)


def test_bounds_all_methods_for_hermite(capsys):
    _, out, _ = run(capsys, "bounds", "--family", "hermite", "--k", "50", "--format", "json")
    methods = [r["method"] for r in json.loads(out)]
    assert methods == ["closed_form", "numeric_theorem1", "resultant", "reference_szego"]


def test_zeros_csv(capsys):
    code, out, _ = run(capsys, "zeros", "--family", "hermite", "--k", "2", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "index,zero,residual"
    assert float(lines[2].split(",")[1]) == pytest.approx(2**-0.5, rel=1e-15)


def test_spacing_marks_singular_gap(capsys):
    code, out, _ = run(capsys, "spacing", "--family", "hermite", "--k", "4", "--mu", "1", "--format", "json")
    status = [r["status"] for r in json.loads(out)]
    assert code == 0 and status == ["ok", "inapplicable", "ok"]


def test_verify_writes_csv_and_exit_codes(tmp_path, capsys):
    out = tmp_path / "report.csv"
    code, _, _ = run(capsys, "verify", "--suite", "quick", "--family", "laguerre", "--kmax", "5",
                     "--format", "csv", "--out", str(out))
    assert code == 0 and out.read_text().startswith("family,k,param1")
    code, _, err = run(capsys, "verify", "--suite", "quick", "--family", "hermite", "--kmax", "2")
    assert code == 1 and "failed" in err


def test_verify_unwritable_path(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--out", str(tmp_path / "nope" / "r.csv"))
    assert code == 2 and "does not exist" in err


def test_idempotent_output(tmp_path, capsys):
    argv = ["verify", "--suite", "quick", "--family", "jacobi", "--kmax", "4", "--format", "csv"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "extreme_zeros", "bessel", "--nu", "1"], capture_output=True, text=True)
    assert res.returncode == 0 and "3.511741" in res.stdout
