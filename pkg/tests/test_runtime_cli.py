import csv
import json
from pathlib import Path

from click.testing import CliRunner

from qefg.runtime.cli import main


def run_cli(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def test_demo_two_stage_hadamard_table():
    result = run_cli("demo", "two-stage", "--hadamard")
    assert result.exit_code == 0
    row = [line for line in result.output.splitlines() if line.startswith("hadamard")][0]
    fields = row.split()
    assert fields[1:] == ["0.500000", "0.500000", "1.000000", "0.000000"]


def test_demo_two_stage_writes_report_files(tmp_path):
    result = run_cli("demo", "two-stage", "--seed", "3", "--count", "2",
                     "--out", str(tmp_path))
    assert result.exit_code == 0
    assert (tmp_path / "two_stage.csv").exists()
    assert (tmp_path / "two_stage.png").exists()
    with (tmp_path / "two_stage.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2
    for row in rows:
        assert float(row["quantum_p0"]) > 0.999999999999
        assert min(float(row["classical_p0"]), float(row["classical_p1"])) > 0.0


def test_demo_grover_trace_reaches_certainty(tmp_path):
    result = run_cli("demo", "grover", "--n", "4", "--w", "2", "--iters", "1",
                     "--out", str(tmp_path))
    assert result.exit_code == 0
    lines = [l for l in result.output.splitlines() if "," in l]
    assert lines[0] == "t,probability"
    final = lines[-1].split(",")
    assert final[0] == "1"
    assert abs(float(final[1]) - 1.0) < 1e-12
    assert (tmp_path / "grover_trace.csv").exists()
    assert (tmp_path / "grover_trace.png").exists()


def test_walk_trace_csv_shape(tmp_path):
    result = run_cli("walk", "--k", "1", "--l", "21", "--steps", "5",
                     "--out", str(tmp_path))
    assert result.exit_code == 0
    with (tmp_path / "walk_trace.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 21 * 6  # steps+1 rows of L sites
    by_step = {}
    for row in rows:
        by_step.setdefault(int(row["n"]), 0.0)
        by_step[int(row["n"])] += float(row["mu"])
    for total in by_step.values():
        assert abs(total - 1.0) < 1e-9
    assert (tmp_path / "walk_heatmap.png").exists()


def test_angel_run_transcripts_are_seed_deterministic(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        result = run_cli("angel", "run", "--matches", "3", "--seed", "11",
                         "--out", str(out))
        assert result.exit_code == 0
    for name in ("match_0000.json", "match_0001.json", "match_0002.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    assert (out1 / "win_rates.csv").exists()
    assert (out1 / "outcomes.png").exists()
    doc = json.loads((out1 / "match_0000.json").read_text())
    assert doc["status"] in ("angelCaught", "angelSurvived")
    assert doc["events"]


def test_angel_run_accepts_config_file(tmp_path):
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps({
        "walker": {"power": 1, "length": 7, "initial_position": 3},
        "horizon": 10,
        "angel_class": "classical",
    }))
    result = run_cli("angel", "run", "--config", str(config_path), "--matches", "2",
                     "--out", str(tmp_path / "out"))
    assert result.exit_code == 0
    doc = json.loads((tmp_path / "out" / "match_0000.json").read_text())
    assert doc["config"]["angel_class"] == "classical"
    assert doc["config"]["walker"]["length"] == 7


def test_nash_on_bundled_game(tmp_path):
    result = run_cli("nash", "--game", "two_step_two_player", "--grid", "2",
                     "--eps", "1e-9", "--out", str(tmp_path))
    assert result.exit_code == 0
    assert "Nash at resolution G=2" in result.output
    reports = json.loads((tmp_path / "equilibria.json").read_text())
    assert reports
    assert all(r["is_nash"] for r in reports)
    assert (tmp_path / "equilibria.csv").exists()
    assert (tmp_path / "payoff_landscape.png").exists()


def test_usage_errors_exit_nonzero():
    runner = CliRunner()
    result = runner.invoke(main, ["demo", "grover", "--n", "3"])
    assert result.exit_code != 0
    result = runner.invoke(main, ["nash", "--game", "does_not_exist"])
    assert result.exit_code != 0
    result = runner.invoke(main, ["walk", "--k", "2", "--coin", "hadamard"])
    assert result.exit_code != 0


def test_walk_stdout_reports_spread():
    result = run_cli("walk", "--k", "1", "--l", "31", "--steps", "8")
    assert result.exit_code == 0
    assert "spread (stddev)" in result.output


def test_walk_accepts_json_config(tmp_path):
    config_path = tmp_path / "walker.json"
    config_path.write_text(json.dumps({
        "power": 2, "length": 15, "boundary": "periodic", "initial_position": 7,
    }))
    result = run_cli("walk", "--config", str(config_path), "--steps", "4",
                     "--out", str(tmp_path / "out"))
    assert result.exit_code == 0
    with (tmp_path / "out" / "walk_trace.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 15 * 5
