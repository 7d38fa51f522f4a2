import csv
import io
import json
import math
import subprocess
import sys

import pytest

from multichsh import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "ghz", "--n", "3", "--steps", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == cli.SWEEP_COLUMNS
    assert [float(r["p"]) for r in rows] == [0.0, 0.5, 1.0]
    assert float(rows[1]["m_chsh"]) == pytest.approx(math.sqrt(1 + 0.5**6), abs=1e-11)
    assert float(rows[0]["content_bound_paired"]) == pytest.approx(math.sqrt(2) - 1, abs=1e-11)


def test_sweep_json_to_file(tmp_path):
    out = tmp_path / "w.json"
    code = cli.main(["sweep", "--family", "w", "--n", "4", "--steps", "2", "--format", "json",
                     "-o", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["config"]["pair"] == [3, 4]
    assert data["rows"][0]["prob"] == pytest.approx(0.5)


def test_sweep_is_deterministic(capsys):
    a = run(capsys, "sweep", "--family", "ghz", "--n", "4", "--steps", "5")
    b = run(capsys, "sweep", "--family", "ghz", "--n", "4", "--steps", "5", "--workers", "2")
    assert a == b


def test_config_file_with_overrides(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "ghz", "n": 3, "steps": 4,
                               "channel": {"alpha": [0.2, 0.3, 0.5]}}))
    code, out, _ = run(capsys, "sweep", "--config", str(cfg), "--steps", "2")
    assert code == 0
    assert len(out.strip().splitlines()) == 3


def test_graph_sweep_with_pair(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("n 4\ne 1 2\ne 1 3\ne 1 4\n")
    code, out, _ = run(capsys, "sweep", "--family", "graph", "--graph", str(g), "--pair", "1", "2",
                       "--steps", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert float(rows[0]["m_chsh"]) == pytest.approx(math.sqrt(2))


def test_thresholds(capsys):
    code, out, _ = run(capsys, "threshold", "--family", "graph", "--n", "4")
    assert code == 0 and out.startswith("p_c=0.29289")
    code, out, _ = run(capsys, "threshold", "--family", "ghz", "--n", "3")
    assert out.startswith("p_c=1.0 ")
    code, out, _ = run(capsys, "threshold", "--method", "mk", "--n", "3")
    assert code == 0 and out.startswith("p_c=0.2062994")


def test_optimize_with_inequality_file(tmp_path, capsys):
    f = tmp_path / "chsh.txt"
    f.write_text("parties 3 settings 2 2 1 local 2 ns 4\n1 0 0 -\n1 0 1 -\n1 1 0 -\n-1 1 1 -\n")
    code, out, _ = run(capsys, "optimize", "--family", "ghz", "--n", "3", "--steps", "2",
                       "--inequality", str(f), "--restarts", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["p", "value", "local_bound", "ns_bound", "content_bound"]
    # GHZ marginals on two qubits are classical: no CHSH violation without conditioning
    assert float(rows[0]["value"]) == pytest.approx(2.0, abs=1e-6)


@pytest.mark.parametrize("argv", [
    ["sweep", "--family", "ghz", "--n", "3", "--steps", "1"],
    ["sweep", "--family", "ghz"],
    ["sweep", "--family", "ghz", "--n", "3", "--p-min", "0.8", "--p-max", "0.2"],
    ["sweep", "--family", "ghz", "--n", "3", "--channel", "bogus"],
    ["sweep", "--family", "ghz", "--n", "99"],
    ["sweep", "--family", "graph", "--graph", "/nonexistent/graph.txt"],
    ["sweep", "--family", "ghz", "--n", "3", "--pair", "1", "2"],
    ["threshold", "--method", "mk", "--n", "4"],
])
def test_configuration_errors_exit_2(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_bad_config_keys(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"family": "ghz", "colour": "red"}')
    code, _, err = run(capsys, "sweep", "--config", str(cfg))
    assert code == 2 and "colour" in err


def test_size_cap_env(monkeypatch, capsys):
    monkeypatch.setenv("NONLOCAL_MAX_QUBITS", "4")
    code, _, _ = run(capsys, "sweep", "--family", "ghz", "--n", "5", "--steps", "2")
    assert code == 2


def test_non_monotone_exits_3(monkeypatch, capsys):
    from multichsh import families

    def boom(*a, **k):
        raise families.NonMonotoneError([0, 1], [0.1, 0.2])

    monkeypatch.setattr(families, "noise_threshold", boom)
    code, _, err = run(capsys, "threshold", "--family", "ghz", "--n", "3")
    assert code == 3 and "not monotone" in err


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "multichsh.cli", "--help"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "sweep" in res.stdout
