import logging
import time

import pytest

import main as cli
from script_parser import ScriptError, parse_script

TIMING_KEYS = {"elapsed_s", "median_update_ns", "p99_update_ns", "started_at", "day"}

log = logging.getLogger("tdyn.test")


def _replay(mode, n, k, text):
    lines = []
    rc = cli.replay(mode, n, k, parse_script(text), log, out=lines.append)
    return rc, lines


def test_replay_path_query():
    rc, lines = _replay("path", 3, 3, "add 0 1\nadd 1 2\nquery\n")
    assert rc == 0
    assert lines == ["true"]


def test_replay_each_mode():
    assert _replay("path", 4, 4, "add 0 1\nquery  # expect false\n") == (0, ["false"])
    assert _replay("cycle", 4, 4, "add 0 1\nadd 1 2\nadd 2 3\nadd 3 0\nquery  # expect true\n")[0] == 0
    assert _replay("td", 4, 3, "add 0 1\nadd 1 2\nquery  # expect 2\n") == (0, ["2"])


def test_replay_td_refusal_keeps_depth():
    rc, lines = _replay("td", 3, 2, "add 0 1\nadd 1 2\nadd 0 2\nquery  # expect 2\n")
    assert rc == 0 and lines == ["2"]


def test_replay_expectation_mismatch(caplog):
    with caplog.at_level(logging.ERROR, logger="tdyn"):
        rc, lines = _replay("path", 3, 3, "add 0 1\nquery  # expect true\n")
    assert rc == 1
    assert lines == ["false"]
    assert "line 2" in caplog.text


def test_replay_absent_delete_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="tdyn"):
        rc, lines = _replay("path", 3, 2, "del 0 1\nquery  # expect false\n")
    assert rc == 0
    assert "absent edge" in caplog.text


def test_replay_bad_vertex_is_script_error():
    with pytest.raises(ScriptError) as exc:
        _replay("path", 3, 3, "add 0 1\nadd 0 7\n")
    assert exc.value.line == 2
    with pytest.raises(ScriptError):
        _replay("cycle", 3, 3, "add 1 1\n")


def test_make_session_unknown_mode():
    with pytest.raises(ValueError):
        cli.make_session("tree", 3, 3)


@pytest.mark.parametrize("mode,k", [("path", 3), ("cycle", 4), ("td", 2)])
def test_stress_is_clean(mode, k, tmp_path):
    report = cli.stress(mode, 6, k, 60, seed=3, repro_dir=str(tmp_path))
    assert report["mismatches"] == 0
    assert report["ops"] == 60
    assert report["repro"] is None
    assert report["accepted"] + report["rejected"] > 0
    assert list(tmp_path.iterdir()) == []


def test_stress_is_deterministic(tmp_path):
    a = cli.stress("path", 6, 3, 40, seed=11, repro_dir=str(tmp_path))
    b = cli.stress("path", 6, 3, 40, seed=11, repro_dir=str(tmp_path))
    assert {k: v for k, v in a.items() if k not in TIMING_KEYS} == {k: v for k, v in b.items() if k not in TIMING_KEYS}


def test_stress_needs_two_vertices():
    with pytest.raises(ValueError):
        cli.stress("path", 1, 3, 5, seed=1)


def test_injected_mismatch_writes_repro(tmp_path):
    report = cli.stress("path", 6, 3, 50, seed=5, inject_mismatch_at=7, repro_dir=str(tmp_path))
    assert report["mismatches"] == 1
    assert report["ops"] == 7
    assert "injected mismatch" in report["first_mismatch"]
    path = tmp_path / "repro-5.txt"
    assert report["repro"] == str(path)
    text = path.read_text(encoding="utf-8")
    assert text.startswith("# repro: mode=path n=6 k=3\n")
    steps = parse_script(text)
    assert len(steps) == 8
    assert steps[-1].op == "query" and steps[-1].expect is not None
    assert cli.replay("path", 6, 3, steps, log, out=lambda s: None) == 0


def test_shrink_keeps_passing_scripts():
    steps = parse_script("add 0 1\nadd 1 2\n")
    assert cli.shrink_steps("path", 3, 3, steps) == steps


def test_bench_csv(tmp_path):
    rows = cli.bench("path", [8, 12], 3, 30, 1)
    assert [r["n"] for r in rows] == [8, 12]
    out = tmp_path / "bench.csv"
    cli.write_csv(str(out), rows)
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "n,mode,median_update_ns,p99_update_ns"
    assert len(lines) == 3
    assert lines[1].startswith("8,path,")


def test_main_obstructions(capsys):
    assert cli.main(["obstructions", "--d", "1", "--n", "4"]) == 0
    assert "# n=2 m=1\n0 1" in capsys.readouterr().out


def test_main_replay(tmp_path, capsys):
    script = tmp_path / "s.txt"
    script.write_text("add 0 1\nadd 1 2\nquery  # expect true\n", encoding="utf-8")
    assert cli.main(["replay", "--mode", "path", "--k", "3", "--n", "3", "--script", str(script)]) == 0
    assert "true" in capsys.readouterr().out
    script.write_text("jump 0 1\n", encoding="utf-8")
    assert cli.main(["replay", "--k", "3", "--n", "3", "--script", str(script)]) == 2
    with pytest.raises(SystemExit):
        cli.main(["replay", "--script", str(tmp_path / "missing.txt")])


def test_main_stress_saves_report(tmp_path, monkeypatch, capsys):
    target = tmp_path / "runs.json"
    monkeypatch.setattr(cli, "REPORT_FILE", str(target))
    monkeypatch.setattr(cli.db_export, "is_enabled", lambda: False)
    monkeypatch.setattr(cli.telegram_alerts, "is_enabled", lambda: False)
    assert cli.main(["stress", "--mode", "cycle", "--k", "4", "--n", "6", "--ops", "20"]) == 0
    assert "ops=20 mismatches=0" in capsys.readouterr().out
    assert target.exists()


def test_main_rejects_bad_sizes():
    with pytest.raises(SystemExit):
        cli.main(["stress", "--k", "0"])


@pytest.mark.parametrize("ready", [True, False])
def test_stress_initialises_database_before_export(ready, tmp_path, monkeypatch):
    calls = []
    monkeypatch.setattr(cli, "REPORT_FILE", str(tmp_path / "runs.json"))
    monkeypatch.setattr(cli.db_export, "is_enabled", lambda: True)
    monkeypatch.setattr(cli.db_export, "init_database", lambda: calls.append("init") or ready)
    monkeypatch.setattr(cli.db_export, "export_run", lambda report: calls.append("export") or True)
    monkeypatch.setattr(cli.telegram_alerts, "is_enabled", lambda: False)
    assert cli.main(["stress", "--mode", "path", "--k", "3", "--n", "5", "--ops", "10"]) == 0
    assert calls == (["init", "export"] if ready else ["init"])


def test_cycle_stress_at_twenty_five_vertices(tmp_path):
    started = time.perf_counter()
    report = cli.stress("cycle", 25, 4, 200, seed=11, repro_dir=str(tmp_path))
    assert report["mismatches"] == 0
    assert report["ops"] == 200
    assert time.perf_counter() - started < 60


def test_td_stress_keeps_pace(tmp_path):
    started = time.perf_counter()
    report = cli.stress("td", 20, 3, 300, seed=11, repro_dir=str(tmp_path))
    assert report["mismatches"] == 0
    assert time.perf_counter() - started < 60
