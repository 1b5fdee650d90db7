import json
import math

import numpy as np
import pytest

from edgewall import make_uniform_grid, read_profile_csv, read_run_json
from edgewall.cli import main


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


RELAX_ARGS = [
    "relax", "--beta", "pi/4", "--nu", "1", "--dx0", "0.1",
    "--stretch", "20", "--xmax", "100", "--quiet",
]


def test_scales_prints_reference_values(capsys):
    code = main([
        "scales", "--ms", "8e5", "--aex", "1.3e-11", "--ku", "5e2",
        "--thickness", "4e-9",
    ])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["exchange_length_m"] * 1e9 == pytest.approx(5.69, abs=0.01)
    assert data["bloch_width_m"] * 1e9 == pytest.approx(161.0, abs=1.0)
    assert data["nu"] == pytest.approx(20.0, abs=0.1)


def test_relax_writes_profile_and_record(workdir, capsys):
    code = main(RELAX_ARGS)
    assert code == 0
    out = capsys.readouterr().out
    assert "converged" in out
    profile = read_profile_csv(str(workdir / "run_profile.csv"))
    assert profile.beta == pytest.approx(math.pi / 4)
    record = read_run_json(str(workdir / "run_run.json"))
    assert record.result["converged"] is True
    assert record.model["nu"] == 1.0
    assert record.grid_spec["nodes"] == len(profile.grid)
    assert record.files["profile_csv"] == "run_profile.csv"


def test_relax_is_deterministic(workdir):
    main(RELAX_ARGS + ["--out", "a"])
    main(RELAX_ARGS + ["--out", "b"])
    a = (workdir / "a_profile.csv").read_bytes()
    b = (workdir / "b_profile.csv").read_bytes()
    assert a == b
    # JSON records differ only in the self-referential file names.
    ja = (workdir / "a_run.json").read_text().replace("a_", "PFX_")
    jb = (workdir / "b_run.json").read_text().replace("b_", "PFX_")
    assert ja == jb


def test_relax_step_budget_reports_failure(workdir, capsys):
    code = main(RELAX_ARGS + ["--max-steps", "1"])
    assert code == 2
    assert "NOT converged" in capsys.readouterr().out
    # Partial results still land on disk for inspection.
    assert (workdir / "run_profile.csv").exists()


def test_relax_requires_beta_and_nu(workdir, capsys):
    code = main(["relax", "--nu", "1"])
    assert code == 1
    assert "required" in capsys.readouterr().err


def test_config_file_with_flag_override(workdir, capsys):
    cfg = workdir / "wall.cfg"
    cfg.write_text(
        "beta = pi/4\nnu = 1\ndx0 = 0.1\nstretch_b = 20\nx_max = 100\nout_prefix = cfg\n"
    )
    code = main(["relax", "--config", str(cfg), "--nu", "0.5", "--quiet"])
    assert code == 0
    record = read_run_json(str(workdir / "cfg_run.json"))
    assert record.model["nu"] == 0.5  # flag wins
    assert record.model["beta"] == pytest.approx(math.pi / 4)


def test_unknown_flag_is_usage_error(capsys):
    code = main(["relax", "--beta", "pi/4", "--nu", "1", "--frobnicate"])
    assert code == 1


def test_bad_angle_is_usage_error(workdir, capsys):
    code = main(["relax", "--beta", "pie", "--nu", "1"])
    assert code == 1


def test_sweep_writes_table(workdir, capsys):
    code = main([
        "sweep", "--beta-list", "pi/8,pi/4", "--nu-list", "1",
        "--dx0", "0.1", "--stretch", "20", "--xmax", "120", "--out", "sw",
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "2/2 runs converged" in out
    table = json.loads((workdir / "sw_sweep.json").read_text())
    assert len(table["runs"]) == 2
    betas = [r["model"]["beta"] for r in table["runs"]]
    assert betas == sorted(betas)
    for run in table["runs"]:
        assert (workdir / run["files"]["profile_csv"]).exists()
        # x_max=120 leaves no room for the standard window; the failure is
        # recorded instead of aborting the sweep.
        assert "decay_fit" in run["diagnostics"]


def test_sweep_rejects_empty_list(workdir, capsys):
    code = main(["sweep", "--beta-list", "", "--nu-list", "1"])
    assert code == 1


def test_energy_breakdown_of_stored_profile(workdir, capsys):
    main(RELAX_ARGS)
    capsys.readouterr()
    code = main(["energy", "--profile", "run_profile.csv", "--nu", "1"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    for key in ("exchange", "anisotropy", "edge_charge_term", "total_renormalized"):
        assert key in data
    assert data["exchange"] > 0.0
    assert data["diagnostics"]["theta_infinity"] == 0.0


def test_decay_fit_of_synthetic_profile(workdir, capsys):
    from edgewall import Profile, write_profile_csv

    grid = make_uniform_grid(1.0, 1000.0)
    theta = np.empty(len(grid))
    theta[0] = 5.0
    theta[1:] = 3.0 / grid.nodes[1:]
    write_profile_csv(Profile(grid=grid, theta=theta, beta=5.0), "decay.csv")
    code = main(["decay", "--profile", "decay.csv", "--window", "50,500"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["best"] == "power"
    assert data["power"]["exponent_or_rate"] == pytest.approx(-1.0, abs=1e-9)


def test_decay_window_syntax_error(workdir, capsys):
    code = main(["decay", "--profile", "nope.csv", "--window", "50"])
    assert code == 1


def test_missing_profile_file_is_reported(workdir, capsys):
    code = main(["energy", "--profile", "missing.csv", "--nu", "1"])
    assert code == 1


def test_validate_only_scales(capsys):
    code = main(["validate", "--only", "scales"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS criterion  1 [scales]")
    assert len(out.strip().splitlines()) == 1


def test_validate_unknown_criterion(capsys):
    code = main(["validate", "--only", "frobnicate"])
    assert code == 2
    assert "no criterion matches" in capsys.readouterr().out
