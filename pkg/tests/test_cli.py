import json
import math
import subprocess
import sys

import pytest

from orthoprime.cli import run


def call(capsys, *argv):
    rc = run(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_measure_cusp(capsys):
    rc, out, _ = call(capsys, "measure", "--case", "cusp-cusp", "--c", "5")
    assert rc == 0
    d = json.loads(out)
    assert d["lambda_k"] == pytest.approx(4 / (6 + math.sqrt(24)), abs=1e-12)
    assert d["lambda"] is None


def test_measure_basmajian_and_geodesic(capsys):
    rc, out, _ = call(capsys, "measure", "--case", "basmajian", "--mu", "1")
    assert rc == 0 and json.loads(out)["lambda_k"] == pytest.approx(2 * math.log(1 / math.tanh(0.5)), abs=1e-11)
    rc, out, _ = call(capsys, "measure", "--case", "geodesic-geodesic", "--c", "23.2212952824",
                      "--shape-params", "2,2", "--grades", "2,2")
    assert rc == 0 and json.loads(out)["lambda_k"] == pytest.approx(0.8061, abs=1e-4)


def test_verify_exit_codes(capsys, tmp_path):
    args = ["verify", "--surface", "gamma2", "--grading", "1,2,2", "--gamma-max", "8"]
    rc, out, _ = call(capsys, *args)
    assert rc == 0
    d = json.loads(out)
    assert d["flags"]["overshoot"] is False
    rc, _, _ = call(capsys, *args, "--assert-residual", "1e-3")
    assert rc == 1
    rc, _, _ = call(capsys, *args, "--assert-residual", "1.0")
    assert rc == 0
    target = tmp_path / "r.json"
    rc, out2, _ = call(capsys, *args, "--out", str(target))
    assert rc == 0 and out2 == "" and target.read_text().strip() == out.strip()


def test_byte_identical(capsys):
    args = ["enumerate", "--surface", "pants:2,2,2", "--grading", "2,2,2", "--gamma-max", "12", "--format", "csv"]
    _, a, _ = call(capsys, *args)
    _, b, _ = call(capsys, *args)
    assert a == b and a.startswith("start,end,canonical_word")


def test_gaps_and_count(capsys):
    rc, out, _ = call(capsys, "gaps", "--surface", "pants:2,2,2", "--grading", "2,2,2", "--gamma-max", "12",
                      "--rays", "50", "--seed", "4")
    assert rc == 0
    d = json.loads(out)
    assert d["rays"]["n"] == 50 and d["rays"]["seed"] == 4
    rc, out, _ = call(capsys, "count", "--surface", "gamma2", "--grading", "1,2,2", "--grid", "6,8,10")
    assert rc == 0 and json.loads(out)["counts"] == sorted(json.loads(out)["counts"])


@pytest.mark.parametrize("argv", [
    ["verify", "--surface", "gamma2", "--grading", "1,2"],
    ["verify", "--surface", "nowhere", "--grading", "1"],
    ["verify", "--surface", "gamma2", "--grading", "1,2,2", "--tol", "0.5"],
    ["verify", "--surface", "gamma2", "--grading", "1,2,2", "--gamma-max", "-1"],
    ["frobnicate"],
    ["measure", "--case", "cusp-cusp"],
])
def test_usage_errors(capsys, argv):
    rc, out, err = call(capsys, *argv)
    assert rc == 2
    assert err.startswith("orthoprime: error:")


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "orthoprime", "measure", "--case", "cusp-cusp", "--c", "3"],
                       capture_output=True, text=True, check=False)
    assert p.returncode == 0
    assert json.loads(p.stdout)["lambda_k"] == pytest.approx(2 - math.sqrt(2), abs=1e-12)
