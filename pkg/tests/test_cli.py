import csv
import json
import math
import subprocess
import sys

import pytest

from presslab.cli import main

SMALL = {"n_max": 8, "q_list": [1, 2]}


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def test_list_sorted_and_complete(capsys):
    assert main(["list"]) == 0
    names = [line.split()[0] for line in capsys.readouterr().out.splitlines()]
    assert names == sorted(names)
    assert {"main-equality", "theorem-3-7", "theorem-4-2", "inverse-limit", "lemma-3-1",
            "subadditivity", "pressure-points"} <= set(names)


def test_unknown_flag_exits_nonzero(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["list", "--bogus"])
    assert exc.value.code != 0
    assert "usage" in capsys.readouterr().err


def test_run_main_equality(tmp_path):
    cfg = write(tmp_path, "c.json", {"experiment": "main-equality", "potential": {"beta": math.log(2)}, **SMALL})
    out = tmp_path / "out"
    assert main(["run", cfg, "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] and report["experiment"] == "main-equality"
    assert len(report["config_hash"]) == 64 and report["anchor"]
    assert report["extrapolated"][0]["gap"] == pytest.approx(0, abs=0.02)
    with open(out / "samples.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["experiment", "n", "q", "delta", "value", "oracle", "gap"]
    assert len(rows) == 1 + 8 * 2 * 8


def test_run_inverse_limit_exact(tmp_path):
    cfg = write(tmp_path, "c.json", {"experiment": "inverse-limit", "n_max": 6, "q_list": [1]})
    out = tmp_path / "out"
    assert main(["run", cfg, "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["exact"] and all(c["passed"] for c in report["exact"])
    assert report["extrapolated"] == []


def test_samples_are_byte_identical(tmp_path):
    cfg = write(tmp_path, "c.json", {"experiment": "theorem-4-2", "backward_points": 2, **SMALL})
    assert main(["run", cfg, "--out", str(tmp_path / "a")]) == 0
    assert main(["run", cfg, "--out", str(tmp_path / "b")]) == 0
    assert (tmp_path / "a" / "samples.csv").read_bytes() == (tmp_path / "b" / "samples.csv").read_bytes()


def test_failing_assertion_exit_code(tmp_path):
    cfg = write(tmp_path, "c.json", {"experiment": "pressure-points", "space": "golden-mean",
                                     "tolerance": 0.0, **SMALL})
    assert main(["run", cfg, "--out", str(tmp_path / "out")]) == 1
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert not report["passed"]


@pytest.mark.parametrize("bad", [
    "{not json",
    {"experiment": "nope"},
    {"experiment": "main-equality", "n_max": 2},
    {"experiment": "main-equality", "delta_list": [0.3]},
    {"experiment": "main-equality", "q_list": [2, 1]},
    {"experiment": "theorem-4-2", "space": {"preset": "full", "sidedness": "one"}},
    {"experiment": "main-equality", "potential": {"depth": 1, "values": {"0": 1}}},
])
def test_config_errors_exit_2(tmp_path, capsys, bad):
    cfg = write(tmp_path, "c.json", bad)
    assert main(["run", cfg, "--out", str(tmp_path / "out")]) == 2
    assert "config error" in capsys.readouterr().err


def test_missing_config_file(tmp_path):
    assert main(["run", str(tmp_path / "missing.json")]) == 2


def test_oracle_command(tmp_path, capsys):
    space = write(tmp_path, "s.json", {"alphabet": 2, "adjacency": [[1, 1], [1, 1]], "sidedness": "one"})
    pot = write(tmp_path, "p.json", {"depth": 1, "values": {"0": 0, "1": math.log(2)}})
    assert main(["oracle", space, pot]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(math.log(3), abs=1e-11)


def test_oracle_refusal_exit_3(tmp_path, capsys):
    space = write(tmp_path, "s.json", {"alphabet": 2, "adjacency": [[1, 1], [0, 1]]})
    pot = write(tmp_path, "p.json", {"depth": 1, "values": {"0": 0, "1": 0}})
    assert main(["oracle", space, pot]) == 3
    assert "reducible" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "presslab", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "main-equality" in proc.stdout


def test_thread_cap_env(tmp_path, monkeypatch):
    monkeypatch.setenv("PRESSLAB_THREADS", "1")
    cfg = write(tmp_path, "c.json", {"experiment": "main-equality", **SMALL})
    assert main(["run", cfg, "--out", str(tmp_path / "out")]) == 0
    monkeypatch.setenv("PRESSLAB_THREADS", "many")
    with pytest.raises(ValueError):
        main(["run", cfg, "--out", str(tmp_path / "out2")])
