"""End-to-end tests for the pruwalk command-line tool."""

import json
import math
import os
import subprocess

import pytest

BIN = os.environ.get("PRUWALK_BIN", "pruwalk")


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    assert proc.returncode == expect, f"{args}: rc={proc.returncode}\n{proc.stderr}"
    return proc


def test_enumerate_json(tmp_path):
    out = tmp_path / "counts.json"
    run("enumerate", "--family", "2sided", "--max-n", "6", "--endpoint", "tail",
        "--out", str(out))
    doc = json.loads(out.read_text())
    assert doc["meta"]["command"] == "enumerate"
    assert doc["data"][1]["Z"] == {"1": "1", "a": "2"}
    assert doc["data"][0]["Z"] == {"1": "1"}


def test_enumerate_loop_endpoint(tmp_path):
    out = tmp_path / "loops.json"
    run("enumerate", "--family", "2sided", "--max-n", "4", "--endpoint", "loop",
        "--out", str(out))
    doc = json.loads(out.read_text())
    assert doc["data"][1]["Z"] == {"a": "2"}


def test_verify_in_process():
    proc = run("verify", "--family", "2sided", "--order", "10")
    assert "residual zero through z^10" in proc.stderr


def test_verify_three_sided():
    run("verify", "--family", "3sided", "--order", "7")


def test_series_verify_roundtrip(tmp_path):
    ser = tmp_path / "series.json"
    run("series", "--order", "14", "--out", str(ser))
    rep1 = tmp_path / "rep1.json"
    proc = run("verify", "--series-file", str(ser), "--order", "14", "--out", str(rep1))
    assert "residual zero" in proc.stderr
    # identical flags give byte-identical outputs
    ser2 = tmp_path / "series2.json"
    run("series", "--order", "14", "--out", str(ser2))
    assert ser.read_bytes() == ser2.read_bytes()
    rep2 = tmp_path / "rep2.json"
    run("verify", "--series-file", str(ser2), "--order", "14", "--out", str(rep2))
    # identical residual reports (meta differs only in the input path)
    assert json.loads(rep1.read_text())["data"] == json.loads(rep2.read_text())["data"]


def test_verify_detects_corruption(tmp_path):
    ser = tmp_path / "series.json"
    run("series", "--order", "10", "--out", str(ser))
    doc = json.loads(ser.read_text())
    coeff = doc["data"]["T"]["coeffs"][5]
    coeff["1"] = str(int(coeff.get("1", "0")) + 1)  # perturb one coefficient
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    proc = run("verify", "--series-file", str(bad), "--order", "10", expect=2)
    assert "FIRST FAILURE at order 5" in proc.stderr


def test_roots():
    proc = run("roots")
    doc = json.loads(proc.stdout)
    assert abs(float(doc["data"]["tails_desorbed"]["root"]) - 0.403032) < 1e-6
    assert abs(float(doc["data"]["loops_desorbed"]["root"]) - 0.412095) < 1e-6
    assert abs(float(doc["data"]["loops_critical_a"]["root"]) - 1.82476) < 1e-5
    assert abs(float(doc["data"]["adsorbed_at_loops_crossing"])) < 1e-6


def test_phase_csv(tmp_path):
    out = tmp_path / "phase.csv"
    run("phase", "--model", "tails", "--alpha-min", "0", "--alpha-max", "1.6",
        "--steps", "32", "--out", str(out))
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "alpha,f,rho,phase"
    rows = [ln.split(",") for ln in lines[1:]]
    assert len(rows) == 33
    crossover = math.log(2.0)
    f_prev = -1.0
    for alpha_s, f_s, rho_s, ph in rows:
        alpha, f, rho = float(alpha_s), float(f_s), float(rho_s)
        assert f >= f_prev - 1e-12  # free energy is non-decreasing
        f_prev = f
        if alpha < crossover - 1e-9:
            assert rho == 0.0 and ph == "desorbed"
        elif alpha > crossover + 1e-9:
            assert rho > 0.3 and ph == "adsorbed"
    # determinism
    out2 = tmp_path / "phase2.csv"
    run("phase", "--model", "tails", "--alpha-min", "0", "--alpha-max", "1.6",
        "--steps", "32", "--out", str(out2))
    assert out.read_bytes() == out2.read_bytes()


def test_estimate():
    proc = run("estimate", "--a", "3", "--order", "50")
    doc = json.loads(proc.stdout)
    assert float(doc["data"]["relative_error"]) < 0.01


def test_heights(tmp_path):
    out = tmp_path / "heights.csv"
    run("heights", "--model", "tails", "--max-n", "24", "--out", str(out))
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,mean_endpoint_height,mean_max_height"
    n1 = lines[2].split(",")
    assert abs(float(n1[2]) - 1.0 / 3.0) < 1e-12


def test_report(tmp_path):
    out = tmp_path / "report.csv"
    run("report", "--out", str(out))
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "model,gamma,order,density_jump,consistent"
    table = {ln.split(",")[0]: ln.split(",") for ln in lines[1:]}
    assert table["ne_directed tails"][2] == "first"
    assert table["dyck loops"][2] == "second"
    assert table["prudent_tails"][2] == "first"
    assert all(row[4] == "yes" for row in table.values())


def test_validation_errors():
    run("enumerate", "--family", "9sided", expect=1)
    run("heights", "--model", "nonsense", expect=1)
    run("estimate", "--a", "-1", expect=1)
    run("nonsense-subcommand", expect=1)
