import json
import math
import os

import numpy as np
import pytest

from qqwalk import Quaternion
from qqwalk.cli import main
from qqwalk.coin import coin_to_json, hadamard_coin, random_coin, validate_coin

S = math.sqrt(0.5)
I = Quaternion.i()
J = Quaternion.j()

ALPHA = "[1, 0, 0, 0]"
BETA = "[0, 0, 0, 0]"


@pytest.fixture
def hadamard_file(tmp_path):
    path = tmp_path / "hadamard.json"
    path.write_text(coin_to_json(hadamard_coin()), encoding="utf-8")
    return str(path)


@pytest.fixture
def ij_file(tmp_path):
    coin = validate_coin(S * I, S * J, S * J, S * I)
    path = tmp_path / "ij.json"
    path.write_text(coin_to_json(coin), encoding="utf-8")
    return str(path)


def test_classify_output(hadamard_file, capsys):
    assert main(["classify", "--coin", hadamard_file]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["class"] == "case3"
    assert set(payload["residuals"]) == {
        "row1-norm", "row2-norm", "row-orthogonality",
        "column-orthogonality", "modulus-pairing"}
    assert max(payload["residuals"].values()) <= 1e-12


def test_simulate_csv_format_and_determinism(hadamard_file, tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    for out in (out1, out2):
        code = main(["simulate", "--coin", hadamard_file, "--alpha", ALPHA,
                     "--beta", BETA, "--steps", "6", "--out", str(out)])
        assert code == 0
    b1 = out1.read_bytes()
    assert b1 == out2.read_bytes()
    lines = b1.decode().splitlines()
    assert lines[0] == "x,probability"
    assert len(lines) == 1 + 7  # parity support of 6 steps
    xs = [int(row.split(",")[0]) for row in lines[1:]]
    assert xs == list(range(-6, 7, 2))
    total = sum(float(row.split(",")[1]) for row in lines[1:])
    assert total == pytest.approx(1.0, abs=1e-10)
    assert b"\r" not in b1


def test_exact_matches_simulate(hadamard_file, tmp_path):
    sim = tmp_path / "sim.csv"
    exa = tmp_path / "exact.csv"
    args = ["--coin", hadamard_file, "--alpha", ALPHA, "--beta", BETA,
            "--steps", "25"]
    assert main(["simulate", *args, "--out", str(sim)]) == 0
    assert main(["exact", *args, "--out", str(exa)]) == 0
    rows_s = sim.read_text().splitlines()[1:]
    rows_e = exa.read_text().splitlines()[1:]
    assert len(rows_s) == len(rows_e)
    for rs, re_ in zip(rows_s, rows_e):
        xs, ps = rs.split(",")
        xe, pe = re_.split(",")
        assert xs == xe
        assert abs(float(ps) - float(pe)) <= 1e-10


def test_xi_closed_and_brute(hadamard_file, capsys):
    assert main(["xi", "--coin", hadamard_file, "--l", "1", "--m", "3"]) == 0
    closed = json.loads(capsys.readouterr().out)
    assert main(["xi", "--coin", hadamard_file, "--l", "1", "--m", "3",
                 "--brute"]) == 0
    brute = json.loads(capsys.readouterr().out)
    assert brute["paths"] == 4
    assert closed["position"] == brute["position"] == 2
    for r in range(2):
        for c in range(2):
            got = np.array(closed["matrix"][r][c])
            want = np.array(brute["matrix"][r][c])
            assert np.max(np.abs(got - want)) <= 1e-10


def test_spectrum_json(ij_file, capsys):
    assert main(["spectrum", "--coin", ij_file, "--theta", "0.4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["eigenvalues"]) == 4
    for (re_, im), res in zip(payload["eigenvalues"], payload["residuals"]):
        assert abs(complex(re_, im)) == pytest.approx(1.0, abs=1e-10)
        assert res <= 1e-9
    assert payload["angles"] == sorted(payload["angles"])


def test_limit_csv(ij_file, tmp_path):
    out = tmp_path / "density.csv"
    assert main(["limit", "--coin", ij_file, "--alpha", ALPHA, "--beta", BETA,
                 "--grid", "101", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "y,density"
    assert len(lines) == 102
    ys = np.array([float(r.split(",")[0]) for r in lines[1:]])
    dens = np.array([float(r.split(",")[1]) for r in lines[1:]])
    assert ys[0] == -1.0 and ys[-1] == 1.0
    r = math.sqrt(0.5)
    assert np.all(dens[np.abs(ys) > r] == 0.0)
    assert np.all(dens[np.abs(ys) < r - 0.05] > 0.0)


def test_compare_json(ij_file, capsys):
    assert main(["compare", "--coin", ij_file, "--alpha", ALPHA, "--beta", BETA,
                 "--steps", "200"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"kolmogorov", "r", "G", "weightC"}
    assert payload["r"] == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert payload["weightC"] == pytest.approx(1.0)
    assert 0.0 < payload["kolmogorov"] < 0.2


# ---------------------------------------------------------------------
# error handling / exit codes
# ---------------------------------------------------------------------

def test_usage_errors(tmp_path, capsys):
    # missing required flag
    assert main(["simulate", "--alpha", ALPHA, "--beta", BETA,
                 "--steps", "4", "--out", str(tmp_path / "x.csv")]) == 1
    # unknown command
    assert main(["frobnicate"]) == 1
    # missing file
    assert main(["classify", "--coin", str(tmp_path / "nope.json")]) == 1
    capsys.readouterr()


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"a": [1, 0, 0', encoding="utf-8")
    assert main(["classify", "--coin", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "malformed JSON" in err


def test_unnormalized_init_names_flag(hadamard_file, tmp_path, capsys):
    code = main(["simulate", "--coin", hadamard_file, "--alpha", "[1,0,0,0]",
                 "--beta", "[1,0,0,0]", "--steps", "4",
                 "--out", str(tmp_path / "x.csv")])
    assert code == 1
    assert "--alpha/--beta" in capsys.readouterr().err


def test_invalid_coin_is_domain_error(tmp_path, capsys):
    bad = tmp_path / "notunitary.json"
    bad.write_text(json.dumps({"a": [1, 0, 0, 0], "b": [1, 0, 0, 0],
                               "c": [0, 0, 0, 0], "d": [0, 0, 0, 0]}),
                   encoding="utf-8")
    assert main(["classify", "--coin", str(bad)]) == 2
    capsys.readouterr()


def test_exact_out_of_scope_is_domain_error(tmp_path, capsys):
    rng = np.random.default_rng(90)
    coin = random_coin(rng, "case5")
    path = tmp_path / "case5.json"
    path.write_text(coin_to_json(coin), encoding="utf-8")
    code = main(["exact", "--coin", str(path), "--alpha", ALPHA, "--beta", BETA,
                 "--steps", "4", "--out", str(tmp_path / "x.csv")])
    assert code == 2
    capsys.readouterr()


def test_degenerate_spectrum_is_numeric_error(ij_file, capsys):
    assert main(["spectrum", "--coin", ij_file, "--theta", "0.0"]) == 3
    capsys.readouterr()
