"""Command-line contract: schemas, determinism, exit codes."""

import json
import re
import subprocess
import sys

import numpy as np
import pytest

import krauslab as kl
from krauslab import cli, schur

WALL = re.compile(rb'"wall_time_ms": \d+')


def strip_wall(payload: bytes) -> bytes:
    return WALL.sub(b'"wall_time_ms": 0', payload)


@pytest.fixture()
def pinching_file(tmp_path):
    fam = kl.KrausFamily(
        [np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex)]
    )
    path = tmp_path / "pinching.json"
    path.write_text(json.dumps(fam.to_json()))
    return str(path)


@pytest.fixture()
def symbol_file(tmp_path):
    s = schur.ToeplitzSymbol({-1: 0.5j, 0: 1.0, 1: -0.5j})
    path = tmp_path / "symbol.json"
    path.write_text(json.dumps(schur.symbol_to_json(s)))
    return str(path)


def test_analyze_report(pinching_file, capsys):
    code = cli.main(["analyze", "--input", pinching_file])
    assert code == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["schema_version"] == cli.SCHEMA_VERSION
    assert obj["command"] == "analyze"
    assert obj["results"]["fix_dim"] == 2
    assert obj["results"]["sigma_min"] == pytest.approx(0.0, abs=1e-12)
    assert obj["results"]["restricted_gap"] == pytest.approx(1.0, abs=1e-12)
    assert obj["config"]["input_path"] == pinching_file


def test_cuntz_report(capsys):
    assert cli.main(["cuntz", "--dim", "8"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["results"]["n"] == 8
    assert obj["results"]["fix_dim"] == 1
    assert obj["results"]["v2_comm"] == 0.0


def test_fuzz_csv_and_json(tmp_path, capsys):
    csv_path = tmp_path / "fuzz.csv"
    json_path = tmp_path / "fuzz.json"
    code = cli.main(
        ["fuzz", "--trials", "7", "--dim", "4", "--ops", "2", "--seed", "3",
         "--json", str(json_path), "--csv", str(csv_path)]
    )
    assert code == 0
    assert capsys.readouterr().out == ""  # --json diverts the report
    obj = json.loads(json_path.read_text())
    assert obj["results"]["trials"] == 7
    assert obj["results"]["failures"] == 0
    assert obj["results"]["min_slack"] >= -1e-9
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "trial,lhs,rhs,slack,digest"
    assert len(lines) == 8  # header + one row per trial
    assert [row.split(",")[0] for row in lines[1:]] == [str(i) for i in range(7)]


def test_commuting_report(tmp_path):
    csv_path = tmp_path / "comm.csv"
    json_path = tmp_path / "comm.json"
    code = cli.main(
        ["commuting", "--dim", "4", "--ops", "2", "--trials", "4", "--seed", "5",
         "--json", str(json_path), "--csv", str(csv_path)]
    )
    assert code == 0
    obj = json.loads(json_path.read_text())
    assert obj["results"]["failures"] == 0
    assert obj["results"]["worst_hausdorff"] <= 1e-8
    rows = csv_path.read_text().strip().splitlines()[1:]
    assert len(rows) == 4
    # even trials share conjugated diagonals (dim d), odd trials are generic (dim 0)
    dims = [int(r.split(",")[1]) for r in rows]
    assert dims == [4, 0, 4, 0]


def test_schur_report(symbol_file, capsys):
    assert cli.main(["schur", "--input", symbol_file]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["results"]["source"] == "symbol"
    assert obj["results"]["kmax"] == 1
    assert obj["results"]["n"] == 2
    assert obj["results"]["hermitian_symbol"] is True
    assert len(obj["results"]["spectrum"]) == 4


def test_schur_measure_input(tmp_path, capsys):
    path = tmp_path / "measure.json"
    path.write_text(json.dumps(schur.measure_to_json(schur.CircleMeasure.point_mass(1j))))
    assert cli.main(["schur", "--input", str(path), "--dim", "2"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["results"]["source"] == "measure"
    spectrum = [complex(re, im) for re, im in obj["results"]["spectrum"]]
    np.testing.assert_allclose(spectrum, [-1j, 1j, 1.0, 1.0], atol=1e-12)


def test_json_determinism_modulo_wall_time(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code = cli.main(
            ["fuzz", "--trials", "5", "--dim", "4", "--ops", "2", "--seed", "11",
             "--json", str(p)]
        )
        assert code == 0
    a, b = (p.read_bytes() for p in paths)
    assert strip_wall(a) == strip_wall(b)


def test_csv_determinism_and_seed_sensitivity(tmp_path):
    out = []
    for name, seed in (("a.csv", 9), ("b.csv", 9), ("c.csv", 10)):
        p = tmp_path / name
        cli.main(["fuzz", "--trials", "4", "--seed", str(seed), "--csv", str(p),
                  "--json", str(tmp_path / (name + ".json"))])
        out.append(p.read_bytes())
    assert out[0] == out[1]
    assert out[0] != out[2]


def test_commuting_determinism(tmp_path):
    payloads = []
    for name in ("x.csv", "y.csv"):
        p = tmp_path / name
        cli.main(["commuting", "--dim", "4", "--ops", "2", "--trials", "4",
                  "--seed", "2", "--csv", str(p), "--json", str(tmp_path / (name + ".json"))])
        payloads.append(p.read_bytes())
    assert payloads[0] == payloads[1]


def test_exit_code_on_failures(capsys):
    # an impossible tolerance turns the spectrum check into a failure
    code = cli.main(["commuting", "--dim", "4", "--ops", "2", "--trials", "2",
                     "--seed", "1", "--tol", "1e-30"])
    assert code == 1
    obj = json.loads(capsys.readouterr().out)
    assert obj["results"]["failures"] > 0


def test_exit_code_on_input_errors(tmp_path, capsys):
    assert cli.main(["analyze", "--input", str(tmp_path / "missing.json")]) == 2
    assert "error:" in capsys.readouterr().err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["analyze", "--input", str(bad)]) == 2
    capsys.readouterr()
    assert cli.main(["analyze"]) == 2  # analyze requires --input
    capsys.readouterr()
    # a symbol cannot be truncated beyond its window
    sym = tmp_path / "sym.json"
    sym.write_text(json.dumps(schur.symbol_to_json(schur.ToeplitzSymbol({0: 1.0}))))
    assert cli.main(["schur", "--input", str(sym), "--dim", "5"]) == 2
    capsys.readouterr()


def test_wrong_payload_kind_rejected(tmp_path, capsys):
    path = tmp_path / "odd.json"
    path.write_text(json.dumps({"something": 1}))
    assert cli.main(["schur", "--input", str(path)]) == 2
    capsys.readouterr()


def test_argparse_rejects_unknown_command():
    with pytest.raises(SystemExit) as exc:
        cli.main(["explode"])
    assert exc.value.code == 2


def test_entry_raises_system_exit(pinching_file, monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["krauslab", "analyze", "--input", pinching_file])
    with pytest.raises(SystemExit) as exc:
        cli.entry()
    assert exc.value.code == 0
    capsys.readouterr()


def test_console_script_runs(pinching_file):
    proc = subprocess.run(
        [sys.executable, "-m", "krauslab.cli", "analyze", "--input", pinching_file],
        capture_output=True,
        text=True,
    )
    # module execution path mirrors the console script
    assert proc.returncode in (0, 1)


def test_run_rejects_unknown_command():
    with pytest.raises(ValueError):
        cli.run(cli.RunConfig(command="nonsense"))
