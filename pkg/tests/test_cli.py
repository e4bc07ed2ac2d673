import csv
import json
import logging
import math

import pytest

from app.main import run


def _read_csv(path):
    with path.open(newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def test_linear_period_map_is_constant_and_warns(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        code = run(["periodmap", "--builtin", "linear", "--param", "alpha=1", "--amax", "5", "--out", str(tmp_path)])
    assert code == 0
    rows = _read_csv(tmp_path / "periodmap.csv")
    assert rows[0] == ["a", "T", "dT", "classification"]
    for row in rows[1:]:
        assert abs(float(row[1]) - 2 * math.pi) < 1e-8
        assert row[3] == "locally_constant"
    assert "locally constant" in caplog.text
    assert (tmp_path / "report.txt").exists()


def test_stable_orbit_inventory(tmp_path):
    code = run(["orbits", "--builtin", "tanh_soft", "--param", "alpha=-2", "--amax", "8", "--nmax", "1",
                "--dot", "--svg", "--out", str(tmp_path)])
    assert code == 0
    records = json.loads((tmp_path / "orbits.json").read_text(encoding="utf-8"))
    assert len(records) == 1
    assert records[0]["morse_index"] == 0
    assert records[0]["period"] == pytest.approx(4.0, abs=1e-10)
    samples = _read_csv(tmp_path / "orbit_n1_1.csv")
    assert samples[0] == ["t", "x"]
    assert float(samples[1][0]) == -1.0
    assert "digraph" in (tmp_path / "orbits.dot").read_text(encoding="utf-8")
    assert (tmp_path / "periodmap.svg").read_text(encoding="utf-8").lstrip().startswith("<?xml")


def test_asymmetric_expression_exits_with_validation_code(tmp_path, capsys):
    assert run(["orbits", "--expr", "xi+eta", "--out", str(tmp_path)]) == 1
    assert "error [nonlinearity]" in capsys.readouterr().err


def test_degenerate_linear_map_refused(tmp_path, capsys):
    code = run(["orbits", "--builtin", "linear", "--param", f"alpha={-math.pi / 2!r}", "--out", str(tmp_path)])
    assert code == 1
    assert "locally constant" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["orbits", "--bogus"],
    ["periodmap"],
    ["validate", "--builtin", "linear", "--param", "alpha"],
    ["validate", "--builtin", "linear", "--expr", "eta"],
    ["simulate", "--builtin", "tanh_soft", "--param", "alpha=-2", "--history", "nonsense"],
    ["periodmap", "--builtin", "linear", "--param", "alpha=1", "--amax", "-2"],
])
def test_usage_errors(argv, tmp_path):
    assert run(argv + ["--out", str(tmp_path)]) == 3


def test_unknown_builtin_is_a_validation_failure(tmp_path):
    assert run(["validate", "--builtin", "quartic", "--param", "alpha=1", "--out", str(tmp_path)]) == 1


def test_validate_report(tmp_path):
    assert run(["validate", "--expr", "-alpha*tanh(eta)", "--param", "alpha=2", "--grid-extent", "3",
                "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "validation.json").read_text(encoding="utf-8"))
    assert report["feedback"] == "negative"
    assert report["spring"] == "soft"
    assert report["validation"]["even_ok"] is True


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('[nonlinearity]\nexpr = "eta + eta^3"\n[bifurcate]\nalpha_lo = 0.5\nalpha_hi = 5.0\n',
                   encoding="utf-8")
    out = tmp_path / "out"
    assert run(["bifurcate", "--config", str(cfg), "--amax", "2", "--m", "16", "--nmax", "1",
                "--out", str(out)]) == 0
    events = json.loads((out / "bifurcation.json").read_text(encoding="utf-8"))
    assert [e["kind"] for e in events] == ["Hopf"]
    assert events[0]["alpha"] == pytest.approx(3 * math.pi / 2, abs=1e-12)


def test_outputs_are_deterministic(tmp_path):
    argv = ["bifurcate", "--builtin", "tanh_soft", "--param", "alpha=-1", "--amax", "3", "--m", "16"]
    assert run(argv + ["--out", str(tmp_path / "a")]) == 0
    assert run(argv + ["--out", str(tmp_path / "b")]) == 0
    for name in ("bifurcation.json", "bifurcation.csv", "report.txt"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_simulation_csv(tmp_path):
    assert run(["simulate", "--builtin", "tanh_soft", "--param", "alpha=-2", "--history", "const:0.5",
                "--tmax", "5", "--out", str(tmp_path)]) == 0
    rows = _read_csv(tmp_path / "simulation.csv")
    assert rows[0] == ["t", "x"]
    assert len(rows) == 1 + 6 * 20 + 1
    assert float(rows[1][1]) == 0.5


def test_verify_symmetry_at_amplitude(tmp_path):
    assert run(["verify", "--builtin", "cubic_hard", "--param", "alpha=1", "--amplitude", "2",
                "--out", str(tmp_path)]) == 0
    out = json.loads((tmp_path / "verify.json").read_text(encoding="utf-8"))
    assert out["symmetry"]["shift_correct"] < 1e-7
    assert out["status"] == "PASS"


def test_verify_exits_nonzero_when_a_gate_fails(tmp_path, monkeypatch):
    from app.commands import verify_command

    monkeypatch.setattr(verify_command, "SYMMETRY_GATE", 0.0)
    assert run(["verify", "--builtin", "cubic_hard", "--param", "alpha=1", "--amplitude", "2",
                "--out", str(tmp_path)]) == 1
    out = json.loads((tmp_path / "verify.json").read_text(encoding="utf-8"))
    assert out["status"] == "FAIL"


def test_verify_constructed_orbits(tmp_path):
    assert run(["verify", "--builtin", "tanh_soft", "--param", "alpha=-2", "--amax", "5", "--m", "32",
                "--nmax", "1", "--out", str(tmp_path)]) == 0
    out = json.loads((tmp_path / "verify.json").read_text(encoding="utf-8"))
    assert [o["status"] for o in out["orbits"]] == ["PASS"]


@pytest.mark.slow
def test_floquet_cross_check(tmp_path, capsys):
    assert run(["floquet", "--builtin", "tanh_soft", "--param", "alpha=-2", "--amax", "5", "--m", "32",
                "--nmax", "1", "--mesh", "128", "--out", str(tmp_path)]) == 0
    assert "PASS" in capsys.readouterr().out
    result = json.loads((tmp_path / "floquet.json").read_text(encoding="utf-8"))
    assert result[0]["cross_check"] == "PASS"
    assert result[0]["zero_number"] == 1
    assert result[0]["full_period"]["unstable_count"] == 0
