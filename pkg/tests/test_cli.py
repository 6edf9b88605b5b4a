import json
import subprocess
import sys

import pytest

from cubv.cli import main


def test_simulate_then_validate(tmp_path, capsys):
    rc = main(["simulate", "--n-samples", "40", "--cohens-d", "3.0",
               "--out", str(tmp_path), "--seed", "3"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n_samples"] == 40
    rc = main(["validate", "--data", payload["path"], "--k-folds", "5",
               "--out", str(tmp_path), "--seed", "3"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["cv_error"] <= 0.2
    assert "naive_interval" in report
    assert report["bound_report"]["detect"] is True


def test_validate_with_intervals(tmp_path, capsys):
    main(["simulate", "--n-samples", "60", "--cohens-d", "1.0",
          "--out", str(tmp_path), "--seed", "4"])
    data_path = json.loads(capsys.readouterr().out)["path"]
    rc = main(["validate", "--data", data_path, "--k-folds", "5",
               "--fold-repeats", "3", "--nested-repeats", "2",
               "--out", str(tmp_path), "--seed", "4"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert "nested_interval" in report
    assert (tmp_path / "cv_distribution.csv").exists()


def test_mc_subcommand(capsys):
    rc = main(["mc", "--p-hat", "0.5", "--epsilon", "0.1", "--alpha", "0.05"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["required_trials"] == 385


def test_shatter_default_hexagon(tmp_path, capsys):
    rc = main(["shatter", "--out", str(tmp_path)])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["separable_count"] == 3
    assert (tmp_path / "census.json").exists()


def test_shatter_enumeration_only(tmp_path, capsys):
    rc = main(["shatter", "--n-clusters", "4", "--out", str(tmp_path)])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["distinct_after_inversion"] == 3
    assert payload["separable_count"] is None


def test_report_null_scenario(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text(
        "scenario = null\nsample_sizes = 24\ndimensions = 2\n"
        "effect_sizes = 0.0\ntrials = 2\nfold_repeats = 2\n"
        "n_realizations = 2\nk_folds = 4\nsvm_tol = 1e-6\n",
        encoding="utf-8")
    rc = main(["report", "--config", str(config), "--out", str(tmp_path / "out"),
               "--seed", "5"])
    assert rc == 0
    manifest = json.loads(capsys.readouterr().out)
    names = {f["name"] for f in manifest["files"]}
    assert "power.csv" in names


def test_config_error_exit_code(tmp_path, capsys):
    config = tmp_path / "bad.cfg"
    config.write_text("scenario = warp\n", encoding="utf-8")
    rc = main(["report", "--config", str(config)])
    assert rc == 2
    assert "configuration error" in capsys.readouterr().err


def test_ingestion_error_exit_code(tmp_path, capsys):
    table = tmp_path / "bad.csv"
    table.write_text("diagnosis,f1\nHC,1.0\nZZ,2.0\n", encoding="utf-8")
    rc = main(["mri", "--data", str(table), "--out", str(tmp_path / "out")])
    assert rc == 3
    assert "ingestion error" in capsys.readouterr().err


def test_threads_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CUBV_THREADS", "2")
    rc = main(["mc", "--p-hat", "0.5"])
    assert rc == 0
    monkeypatch.setenv("CUBV_THREADS", "banana")
    rc = main(["mc", "--p-hat", "0.5"])
    assert rc == 2


def test_entry_point_subprocess(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "cubv.cli", "mc", "--p-hat", "0.25"],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert json.loads(result.stdout)["required_trials"] == 1153


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
