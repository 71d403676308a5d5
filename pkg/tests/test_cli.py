import json
import math
import subprocess
import sys

import pytest

from su2qec.cli import main


def run_cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_code1_chain(capsys):
    code, out, _ = run_cli(capsys, "build", "--code", "1", "--chain", "5", "--boundary", "aperiodic")
    assert code == 0
    assert "[[48,5,3]]" in out


def test_build_code1_honeycomb(capsys):
    code, out, _ = run_cli(capsys, "build", "--code", "1", "--honeycomb", "1", "1")
    assert code == 0 and "[[18,1,3]]" in out


def test_build_code2_even_periodic_chain(capsys):
    code, out, _ = run_cli(capsys, "build", "--code", "2", "--chain", "4", "--boundary", "periodic")
    assert code == 0 and "n=48 k=8" in out


def test_build_code2_odd_periodic_chain(capsys):
    # an odd ring is not bipartite, so no dot pattern covers every link once
    code, out, err = run_cli(capsys, "build", "--code", "2", "--chain", "3", "--boundary", "periodic")
    assert code == 2 and out == ""
    assert "not bipartite" in err


def test_build_writes_json(tmp_path, capsys):
    path = tmp_path / "code.json"
    code, _, _ = run_cli(capsys, "build", "--code", "carbon", "--out", str(path))
    assert code == 0
    d = json.loads(path.read_text())
    assert (d["n"], d["k"], d["d_claimed"]) == (12, 2, 4)


def test_usage_errors(capsys):
    assert run_cli(capsys, "build", "--code", "1")[0] == 2
    assert run_cli(capsys, "build", "--code", "7")[0] == 2
    assert run_cli(capsys, "spectrum", "--chain", "1", "--g2", "-1")[0] == 2
    assert run_cli(capsys)[0] == 2


def test_verify_carbon(capsys):
    code, out, _ = run_cli(capsys, "verify", "--code", "carbon")
    rep = json.loads(out)
    assert code == 0
    assert rep["checks"]["distance"]["distance"] == 4
    assert rep["checks"]["single_qubit_correction"] == {"corrected": 36, "pass": True, "total": 36}


def test_verify_code1_n1(capsys):
    code, out, _ = run_cli(capsys, "verify", "--code", "1", "--chain", "1")
    rep = json.loads(out)
    assert code == 0
    assert rep["checks"]["codespace_dim"]["projector_rank"] == 2


def test_verify_code1_periodic_three(capsys):
    code, out, _ = run_cli(capsys, "verify", "--code", "1", "--chain", "3", "--boundary", "periodic")
    rep = json.loads(out)
    assert code == 0
    assert rep["checks"]["topological"]["pass"]


def test_verify_large_code_is_bounded(capsys):
    code, out, _ = run_cli(capsys, "verify", "--code", "1", "--honeycomb", "3", "3")
    rep = json.loads(out)
    assert rep["checks"]["distance"].get("bounded_verification")
    assert code == 0


def test_spectrum_chain_one(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--code", "1", "--chain", "1", "--g2", "1.0")
    rep = json.loads(out)
    assert code == 0
    root = math.sqrt(9 / 16 + 4)
    assert rep["eigenvalues"] == [float(f"{0.75 - root:.12g}"), float(f"{0.75 + root:.12g}")]
    assert rep["comparison"]["pass"]


def test_spectrum_chain_two(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--code", "1", "--chain", "2", "--g2", "1.0")
    assert code == 0 and json.loads(out)["comparison"]["max_abs_diff"] <= 1e-10


def test_spectrum_code2(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--code", "2", "--chain", "4", "--boundary", "periodic")
    rep = json.loads(out)
    assert code == 0 and rep["basis_dim"] == 32 and rep["sector_leakage"] == 0.0


def test_spectrum_periodic_sectors(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--code", "1", "--chain", "3", "--boundary", "periodic")
    rep = json.loads(out)
    assert code == 0 and set(rep["sectors"]) == {"winding0", "winding1"}


def test_decode_table_vertex(capsys):
    code, out, _ = run_cli(capsys, "decode-table", "--code", "vertex")
    rep = json.loads(out)
    assert code == 0 and rep["n_rows"] == 10


def test_decode_table_422_detect_only(capsys):
    code, out, _ = run_cli(capsys, "decode-table", "--code", "422")
    rep = json.loads(out)
    assert code == 0 and rep["mode"] == "detect-only"


def test_decode_table_carbon(capsys):
    code, out, _ = run_cli(capsys, "decode-table", "--code", "carbon")
    assert json.loads(out)["n_error_syndromes"] == 36


def test_encode_check(capsys):
    code, out, _ = run_cli(capsys, "encode-check", "--seed", "3")
    assert code == 0 and json.loads(out)["pass"]


def test_qubit_cost(capsys):
    code, out, _ = run_cli(capsys, "qubit-cost", "--chain", "5")
    assert code == 0
    assert "9N+3     = 48" in out and "~15N = 75" in out and "~12N     = 60" in out


def test_output_is_byte_stable(capsys):
    a = run_cli(capsys, "spectrum", "--code", "1", "--chain", "2")[1]
    b = run_cli(capsys, "spectrum", "--code", "1", "--chain", "2")[1]
    assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "su2qec", "build", "--code", "carbon"], capture_output=True, text=True)
    assert res.returncode == 0 and "[[12,2,4]]" in res.stdout
