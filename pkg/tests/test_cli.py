import json

import pytest

from rotlab.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_OK, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rot_fixture(capsys):
    code, out, _ = run_cli(capsys, "rot", "--fixture", "theorem-main")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["kind"] == "quadratic"
    assert (doc["a"], doc["b"], doc["c"], doc["d"]) == (-1, 1, 1, 2)
    assert doc["cf"] == {"preperiod": [], "period": [2]}


def test_rot_family_rational(capsys):
    code, out, _ = run_cli(capsys, "rot", "--family", "fqr", "--q", "1/3", "--r", "0")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc == {
        "kind": "rational",
        "value": "1/2",
        "cf": {"preperiod": [2], "period": []},
        "cf_length": 1,
    }


def test_rot_budget_exit_code(capsys):
    code, out, _ = run_cli(
        capsys, "rot", "--family", "bosh", "--a", "1/4", "--b", "1/2", "--max-stages", "3"
    )
    assert code == EXIT_BUDGET
    assert json.loads(out)["kind"] == "undetermined"


def test_rot_requires_one_map_source(capsys):
    code, _, err = run_cli(capsys, "rot")
    assert code == EXIT_INVALID
    assert "choose exactly one" in err


def test_rot_bad_rational_flag(capsys):
    code, _, err = run_cli(capsys, "rot", "--family", "fqr", "--q", "1/0", "--r", "0")
    assert code == EXIT_INVALID
    assert "error" in err


def test_trace_fixture(capsys):
    code, out, _ = run_cli(capsys, "trace", "--fixture", "theorem-main")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["outcome"]["kind"] == "cycle"
    assert doc["quotients"] == [2, 2]
    assert doc["rotation_number"]["kind"] == "quadratic"


def test_estimate(capsys):
    code, out, _ = run_cli(
        capsys, "estimate", "--family", "rotation", "--r", "1/3", "--iters", "100"
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["estimate"] == "1/3"
    assert doc["error_bound"] == "1/100"


def test_family_emits_loadable_map(capsys, tmp_path):
    path = tmp_path / "map.json"
    code, _, _ = run_cli(
        capsys, "family", "--family", "fqr", "--q", "2/3", "--r", "1/5",
        "--out", str(path),
    )
    assert code == EXIT_OK
    code, out, _ = run_cli(capsys, "rot", "--map", str(path))
    assert code == EXIT_OK
    doc = json.loads(out)
    assert (doc["a"], doc["b"], doc["c"], doc["d"]) == (0, 1, 2, 2)


def test_rot_rejects_interval_map_file(capsys, tmp_path):
    from rotlab.fixtures import obstruction_g

    path = tmp_path / "g.json"
    path.write_text(json.dumps(obstruction_g().to_json()))
    code, _, err = run_cli(capsys, "rot", "--map", str(path))
    assert code == EXIT_INVALID
    assert "interval map" in err


def test_obstruct_fixture(capsys):
    code, out, _ = run_cli(capsys, "obstruct", "--fixture", "paper-gh")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["verdict"] == "obstruction"
    assert doc["rotation_number"]["d"] == 2


def test_obstruct_files(capsys, tmp_path):
    from rotlab.fixtures import obstruction_g, obstruction_h

    gp, hp = tmp_path / "g.json", tmp_path / "h.json"
    gp.write_text(json.dumps(obstruction_g().to_json()))
    hp.write_text(json.dumps(obstruction_h().to_json()))
    code, out, _ = run_cli(
        capsys, "obstruct", "--g", str(gp), "--h", str(hp), "--s", "1/4"
    )
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] == "obstruction"


def test_obstruct_bad_seed(capsys, tmp_path):
    from rotlab.fixtures import obstruction_g, obstruction_h

    gp, hp = tmp_path / "g.json", tmp_path / "h.json"
    gp.write_text(json.dumps(obstruction_g().to_json()))
    hp.write_text(json.dumps(obstruction_h().to_json()))
    code, _, err = run_cli(
        capsys, "obstruct", "--g", str(gp), "--h", str(hp), "--s", "3/8"
    )
    assert code == EXIT_INVALID
    assert "g(h(s))" in err


def test_scan_csv(capsys):
    code, out, _ = run_cli(
        capsys, "scan", "--q-max-den", "3", "--r-max-den", "3", "--no-timing"
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "q,r,kind,value,cf_preperiod,cf_period,stages,max_bits,elapsed_ms"
    assert len(lines) == 1 + 3 * 3


def test_scan_json_and_summary(capsys, tmp_path):
    summary = tmp_path / "summary.json"
    code, out, _ = run_cli(
        capsys, "scan", "--q-max-den", "3", "--r-max-den", "3",
        "--format", "json", "--summary-out", str(summary), "--no-timing",
    )
    assert code == EXIT_OK
    docs = json.loads(out)
    assert len(docs) == 9
    assert json.loads(summary.read_text())


def test_scan_plot(capsys, tmp_path):
    fig = tmp_path / "grid.png"
    code, _, _ = run_cli(
        capsys, "scan", "--q-max-den", "3", "--r-max-den", "3",
        "--plot", str(fig), "--no-timing",
    )
    assert code == EXIT_OK
    assert fig.stat().st_size > 0


def test_scan_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("ROTLAB_JOBS", "2")
    code, out, _ = run_cli(
        capsys, "scan", "--q-max-den", "3", "--r-max-den", "3", "--no-timing"
    )
    assert code == EXIT_OK
    assert len(out.strip().splitlines()) == 10


def test_unknown_subcommand(capsys):
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == EXIT_INVALID
