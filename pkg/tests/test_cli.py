import io
import json
import subprocess
import sys
from fractions import Fraction as Fr

import pytest

from harmshear import __version__
from harmshear.cli import main
from harmshear.mappings import catalog, eval_map


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_coeffs_csv_golden():
    code, text = run("coeffs", "--map", "k0", "--nmax", "3", "--format", "csv")
    assert code == 0
    assert text == "n,a_n,b_n\n1,1,0\n2,5/2,1/2\n3,14/3,5/3\n"


def test_coeffs_sa_zero_and_kc_one():
    code, doc = run_json("coeffs", "--map", "sa", "--param", "0", "--nmax", "2")
    assert code == 0
    assert [(r["n"], r["a"], r["b"]) for r in doc["payload"]["rows"]] == [(1, "1", "0"), (2, "3/2", "-1/2")]
    _, k0 = run("coeffs", "--map", "k0", "--nmax", "3", "--format", "csv")
    _, kc = run("coeffs", "--map", "kc", "--param", "1", "--nmax", "3", "--format", "csv")
    assert k0 == kc


def test_coeffs_json_round_trip():
    code, doc = run_json("coeffs", "--map", "ka", "--param", "-1/3", "--nmax", "40")
    assert code == 0
    assert doc["toolVersion"] == __version__ and doc["command"] == "coeffs" and doc["mode"] == "exact"
    spec = catalog("ka", Fr(-1, 3))
    for row in doc["payload"]["rows"]:
        assert isinstance(row["a"], str)
        assert Fr(row["a"]) == spec.a_coef(row["n"])
        assert Fr(row["b"]) == spec.b_coef(row["n"])


def test_decimal_params_are_read_exactly():
    _, a = run("coeffs", "--map", "kc", "--param", "0.25", "--nmax", "5", "--format", "csv")
    _, b = run("coeffs", "--map", "kc", "--param", "1/4", "--nmax", "5", "--format", "csv")
    assert a == b


def test_verify_examples():
    code, doc = run_json("verify", "--map", "k0", "--conjecture", "css0", "--nmax", "50")
    assert code == 0 and doc["payload"]["zeroSlack"]
    assert all(r["aSlack"] == "0" and r["bSlack"] == "0" for r in doc["payload"]["rows"])
    code, doc = run_json("verify", "--map", "ka", "--param", "1/2", "--conjecture", "sh-strict", "--nmax", "50")
    assert code == 0
    assert all(Fr(r["aSlack"]) > 0 for r in doc["payload"]["rows"])


def test_verify_failure_exit_code():
    code, doc = run_json("verify", "--map", "ka", "--param", "1/2", "--conjecture", "improved", "--a", "0")
    assert code == 1 and doc["payload"]["label"] == "parametric"


def test_verify_scan_jacobian():
    code, doc = run_json("verify", "--map", "sc", "--param", "4", "--conjecture", "muir", "--scan-jacobian")
    scan = doc["payload"]["jacobianScan"]
    assert code == 0 and scan["minJacobian"] > 0 and scan["maxDilatation"] < 1


def test_shear_examples():
    code, doc = run_json("shear", "--target", "koebe", "--mobius", "0,+1", "--phi", "0", "--nmax", "10")
    k0 = catalog("k0")
    p = doc["payload"]
    assert code == 0 and p["residual"] == "0"
    assert [Fr(x) for x in p["h"][1:]] == [k0.a_coef(n) for n in range(1, 11)]
    assert [Fr(x) for x in p["g"][1:]] == [k0.b_coef(n) for n in range(1, 11)]

    code, doc = run_json("shear", "--target", "halfplane", "--mobius", "0,-1", "--phi", "pi/2", "--nmax", "10")
    s0 = catalog("s0")
    assert [Fr(x) for x in doc["payload"]["h"][1:]] == [s0.a_coef(n) for n in range(1, 11)]
    assert [Fr(x) for x in doc["payload"]["g"][1:]] == [s0.b_coef(n) for n in range(1, 11)]

    code, doc = run_json("shear", "--target", "koebe", "--mobius", "0,0", "--nmax", "6")
    assert doc["payload"]["h"] == [str(n) for n in range(7)]
    assert set(doc["payload"]["g"]) == {"0"}


def test_shear_series_file(tmp_path):
    path = tmp_path / "F.json"
    path.write_text(json.dumps({"coeffs": ["0", "1", "1", "1", "1"]}))
    code, doc = run_json("shear", "--target", "series-file", "--series-file", str(path),
                         "--mobius", "-1/2,-1", "--phi", "pi/2", "--scale", "1/2", "--nmax", "10")
    assert code == 0
    assert doc["payload"]["nmax"] == 4
    sa = catalog("sa", Fr(-1, 2))
    assert [Fr(x) for x in doc["payload"]["h"][1:]] == [sa.a_coef(n) for n in range(1, 5)]


def test_grid_examples(tmp_path):
    out = tmp_path / "g.csv"
    assert main(["grid", "--map", "k0", "--radii", "1", "--angles", "1", "--out", str(out)]) == 0
    lines = out.read_bytes().decode("utf-8").split("\n")
    assert lines[0] == "x,y,u,v,jacobian" and lines[2] == ""
    x, y, u, v, J = map(float, lines[1].split(","))
    s = eval_map(catalog("k0"), 0.5)
    assert (x, y) == (0.5, 0.0)
    assert complex(u, v) == s.f and J == s.jacobian

    code, text = run("grid", "--map", "ka", "--param", "1/2", "--radius-list", "0", "--angles", "3")
    rows = text.splitlines()[1:]
    assert len(rows) == 3
    for row in rows:
        x, y, u, v, J = map(float, row.split(","))
        assert u == v == 0 and J == 0.75


def test_grid_shape_and_format():
    code, text = run("grid", "--map", "kc", "--param", "1/4", "--radii", "5", "--angles", "7")
    rows = text.splitlines()
    assert len(rows) == 1 + 5 * 7
    assert "e" not in text.lower()
    radii = [round(float(r.split(",")[0]) ** 2 + float(r.split(",")[1]) ** 2, 9) for r in rows[1:]]
    assert radii == sorted(radii)  # radius-major


def test_scan_examples():
    code, doc = run_json("scan", "--sharpness", "--n", "3", "--a-steps", "3")
    rows = doc["payload"]["rows"]
    assert code == 0
    assert [r["a"] for r in rows] == ["-1/2", "0", "1/2"]
    assert [r["gap"] for r in rows] == ["5/2", "5/3", "5/6"]
    code, doc = run_json("scan", "--sharpness", "--n", "9", "--a-steps", "6")
    gaps = [Fr(r["gap"]) for r in doc["payload"]["rows"]]
    assert all(x > y for x, y in zip(gaps, gaps[1:]))
    code, doc = run_json("scan", "--sharpness", "--n", "9", "--a-steps", "5")
    zero = [r for r in doc["payload"]["rows"] if r["a"] == "0"][0]
    assert Fr(zero["gap"]) == Fr(17 * 8, 6)


EXIT_MATRIX = [
    (["coeffs", "--map", "k0", "--nmax", "3"], 0),
    (["coeffs", "--map", "ka", "--param", "1"], 2),
    (["coeffs", "--map", "ka"], 2),
    (["coeffs", "--map", "zz"], 2),
    (["coeffs", "--map", "k0", "--nmax", "10001"], 2),
    (["coeffs", "--map", "sc", "--param", "abc"], 2),
    (["verify", "--map", "k0", "--conjecture", "css0"], 0),
    (["verify", "--map", "k0", "--conjecture", "muir"], 2),
    (["verify", "--map", "ka", "--param", "1/2", "--conjecture", "css0"], 2),
    (["verify", "--map", "ka", "--param", "1/2", "--conjecture", "improved", "--a", "-1/2"], 1),
    (["shear", "--mobius", "1,1"], 2),
    (["shear", "--mobius", "1/2"], 2),
    (["shear", "--target", "series-file"], 2),
    (["shear", "--phi", "pi"], 2),
    (["grid", "--map", "k0", "--radii", "0"], 2),
    (["grid", "--map", "k0", "--radius-list", "1.0"], 2),
    (["grid", "--map", "k0", "--out", "/nonexistent-dir/x.csv"], 3),
    (["scan", "--sharpness", "--n", "1", "--a-steps", "3"], 2),
    (["scan", "--n", "3", "--a-steps", "3"], 2),
    ([], 2),
]


@pytest.mark.parametrize("argv, code", EXIT_MATRIX)
def test_exit_codes(argv, code, capsys):
    assert main(argv, out=io.StringIO()) == code
    if code == 2:
        assert capsys.readouterr().err.startswith("error:")


def test_malformed_series_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["shear", "--target", "series-file", "--series-file", str(bad)], out=io.StringIO()) == 2
    missing = tmp_path / "missing.json"
    assert main(["shear", "--target", "series-file", "--series-file", str(missing)], out=io.StringIO()) == 3
    nonzero = tmp_path / "c0.json"
    nonzero.write_text('["1", "1"]')
    assert main(["shear", "--target", "series-file", "--series-file", str(nonzero)], out=io.StringIO()) == 2


def test_entry_point_subprocess(tmp_path):
    cmd = [sys.executable, "-m", "harmshear", "grid", "--map", "sa", "--param", "-1/2",
           "--radii", "4", "--angles", "9", "--out"]
    outs = []
    for i, threads in enumerate(("1", "8")):
        path = tmp_path / f"g{i}.csv"
        subprocess.run(cmd + [str(path), "--threads", threads], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    bad = subprocess.run([sys.executable, "-m", "harmshear", "verify", "--map", "k0", "--conjecture", "muir"],
                         capture_output=True, text=True)
    assert bad.returncode == 2 and "muir" in bad.stderr
