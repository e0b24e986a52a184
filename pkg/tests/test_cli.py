"""
Tests del CLI: exit codes, encabezado de los CSV, determinismo y subcomandos auxiliares
"""

import json
import os

import numpy as np
import pandas as pd
import pytest

from scripts.engine_cli import main

LOW_OAM = {"oam": 19, "coupling": {"value": 0.2, "unit": "gamma0"}}


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    """Sin .prefs.json ni variables ENGINE_* del entorno del desarrollador"""
    monkeypatch.chdir(tmp_path)
    for key in list(os.environ):
        if key.startswith("ENGINE_"):
            monkeypatch.delenv(key)


def write_config(tmp_path, data, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def read_table(path):
    return pd.read_csv(path, comment="#")


def test_spectrum_csv_header_and_columns(tmp_path):
    config = write_config(tmp_path, {"spectrum": {"detuning": {"min": 0.5, "max": 250.0, "n_points": 25}}})
    out = tmp_path / "out"
    assert main(["spectrum", "--config", config, "--out", str(out)]) == 0

    first = (out / "spectrum.csv").read_text(encoding="utf-8").splitlines()[0]
    assert first.startswith("# config_hash=")
    assert len(first.split()[1].split("=")[1]) == 64
    assert "subcommand=spectrum" in first

    frame = read_table(out / "spectrum.csv")
    weights = [f"X_{m}_{b}" for b in ("A", "C", "B") for m in ("a", "c", "d")]
    assert list(frame.columns) == (
        ["detuning", "omega_A", "omega_C", "omega_B"] + weights + ["bare_a", "bare_c", "bare_d"]
    )
    assert len(frame) == 25
    ordered = frame[["omega_A", "omega_C", "omega_B"]].to_numpy()
    assert np.all(np.diff(ordered, axis=1) > 0)
    for branch in ("A", "C", "B"):
        column = frame[[f"X_{m}_{branch}" for m in ("a", "c", "d")]].to_numpy()
        assert np.allclose((column ** 2).sum(axis=1), 1.0, atol=1e-10)
        assert np.all(column[:, 0] >= 0)


def test_hopfield_weights_sum_to_one(tmp_path):
    config = write_config(tmp_path, {"spectrum": {"detuning": {"min": 0.5, "max": 250.0, "n_points": 10}}})
    out = tmp_path / "out"
    assert main(["hopfield", "--config", config, "--out", str(out)]) == 0
    frame = read_table(out / "hopfield.csv")
    for branch in ("A", "C", "B"):
        total = frame[[f"X2_{m}_{branch}" for m in ("a", "c", "d")]].sum(axis=1)
        assert np.allclose(total, 1.0, atol=1e-12)


def test_otto_is_byte_deterministic(tmp_path):
    config = write_config(tmp_path, {"otto": {"detuning_i_factor": 10, "detuning_f": 2.0}})
    first, second = tmp_path / "a", tmp_path / "b"
    assert main(["otto", "--config", config, "--out", str(first)]) == 0
    assert main(["otto", "--config", config, "--out", str(second)]) == 0
    assert (first / "otto.csv").read_bytes() == (second / "otto.csv").read_bytes()

    row = read_table(first / "otto.csv").iloc[0]
    assert row["eta"] == pytest.approx(1 - row["Omega_f"] / row["Omega_i"], rel=1e-12)
    assert row["W"] > 0


def test_unknown_key_exits_with_validation_code(tmp_path, capsys):
    config = write_config(tmp_path, {"otto": {"detuning_i_factor": 10, "detuning_f": 2.0, "detunning": 1}})
    assert main(["otto", "--config", config, "--out", str(tmp_path / "out")]) == 2
    assert "detunning" in capsys.readouterr().err
    assert not (tmp_path / "out" / "otto.csv").exists()


def test_missing_and_extra_blocks_exit_with_validation_code(tmp_path):
    missing = write_config(tmp_path, {"physical": {}}, "missing.json")
    extra = write_config(tmp_path, {"otto": {"detuning_i_factor": 10, "detuning_f": 2.0},
                                    "sta": {"tau": 10.0, "omega_i": 2.0, "omega_f": 1.0}}, "extra.json")
    assert main(["otto", "--config", missing]) == 2
    assert main(["otto", "--config", extra]) == 2


def test_missing_config_file_exits_with_validation_code(tmp_path):
    assert main(["otto", "--config", str(tmp_path / "nope.json")]) == 2


def test_not_an_engine_exits_with_domain_code(tmp_path, capsys):
    config = write_config(tmp_path, {
        "physical": {"t_phonon": 0.0},
        "otto": {"detuning_i_factor": 10, "detuning_f": 2.0},
    })
    assert main(["otto", "--config", config, "--out", str(tmp_path / "out")]) == 3
    assert "NotAnEngineError" in capsys.readouterr().err


def test_unstable_step_exits_with_numerical_code(tmp_path):
    config = write_config(tmp_path, {"langevin": {
        "mode": "polariton", "detuning": 2.0, "dt": 0.1, "horizon": 1.0, "n_traj": 10,
    }})
    assert main(["langevin", "--config", config, "--out", str(tmp_path / "out")]) == 4


def test_langevin_horizon_shorter_than_record_interval_exits_with_validation_code(tmp_path, capsys):
    config = write_config(tmp_path, {"langevin": {
        "mode": "polariton", "detuning": 2.0, "dt": 0.01, "horizon": 0.05, "n_traj": 10, "record_every": 10,
    }})
    assert main(["langevin", "--config", config, "--out", str(tmp_path / "out")]) == 2
    assert "ConfigValidationError" in capsys.readouterr().err
    assert not (tmp_path / "out" / "langevin.csv").exists()


def test_langevin_missing_schedule_file_exits_with_validation_code(tmp_path, capsys):
    config = write_config(tmp_path, {"langevin": {
        "mode": "polariton", "detuning": 2.0, "dt": 0.01, "horizon": 1.0, "n_traj": 10,
        "schedule_file": str(tmp_path / "no_schedule.csv"),
    }})
    assert main(["langevin", "--config", config, "--out", str(tmp_path / "out")]) == 2
    assert "no_schedule.csv" in capsys.readouterr().err


def test_photon_occupation_setting_reaches_otto(tmp_path, monkeypatch):
    base = {"otto": {"detuning_i_factor": 10, "detuning_f": 2.0}}
    pinned = {"otto": {"detuning_i_factor": 10, "detuning_f": 2.0, "n_a": 0.0}}
    paths = {"base": write_config(tmp_path, base, "base.json"), "pinned": write_config(tmp_path, pinned, "pinned.json")}

    rows = {}
    assert main(["otto", "--config", paths["base"], "--out", str(tmp_path / "cold")]) == 0
    rows["cold"] = read_table(tmp_path / "cold" / "otto.csv").iloc[0]
    monkeypatch.setenv("ENGINE_PHOTON_OCCUPATION", "0.5")
    for name in ("base", "pinned"):
        assert main(["otto", "--config", paths[name], "--out", str(tmp_path / name)]) == 0
        rows[name] = read_table(tmp_path / name / "otto.csv").iloc[0]

    assert rows["base"]["n_i"] > rows["cold"]["n_i"]
    assert rows["base"]["n_f"] == 0.0
    assert rows["pinned"]["n_i"] == rows["cold"]["n_i"]


def test_langevin_seed_flag_controls_reproducibility(tmp_path):
    config = write_config(tmp_path, {
        "physical": LOW_OAM,
        "langevin": {
            "mode": "polariton", "detuning": 2.0, "dt": 0.01, "horizon": 1.0,
            "n_traj": 50, "record_every": 10, "seed": 7,
        },
    })
    runs = {}
    for name, seed in (("a", "5"), ("b", "5"), ("c", "6")):
        out = tmp_path / name
        assert main(["langevin", "--config", config, "--out", str(out), "--seed", seed]) == 0
        runs[name] = read_table(out / "langevin.csv")

    pd.testing.assert_frame_equal(runs["a"], runs["b"])
    assert not np.allclose(runs["a"]["n_A"].to_numpy()[1:], runs["c"]["n_A"].to_numpy()[1:])
    assert len(runs["a"]) == 11


def test_sweep_rows_follow_grid_order(tmp_path):
    config = write_config(tmp_path, {
        "otto": {"detuning_i_factor": 10, "detuning_f": 2.0},
        "sweep": {"axes": [
            {"name": "detuning_f", "min": 1.0, "max": 5.0, "n_points": 3},
            {"name": "oam", "min": 100, "max": 200, "n_points": 6},
        ]},
    })
    out = tmp_path / "out"
    assert main(["sweep", "--config", config, "--out", str(out)]) == 0
    frame = read_table(out / "sweep.csv")

    assert len(frame) == 18
    assert list(frame["detuning_f"].iloc[:6]) == [1.0] * 6
    assert list(frame["oam"].iloc[:6]) == [100, 120, 140, 160, 180, 200]
    assert (frame["status"] == "ok").all()
    for _, group in frame.groupby("detuning_f", sort=False):
        assert np.all(np.diff(group["eta"].to_numpy()) > 0)


def test_finite_cycle_against_ideal(tmp_path):
    config = write_config(tmp_path, {
        "physical": LOW_OAM,
        "otto": {"detuning_i_factor": 10, "detuning_f": 0.2},
        "finite": {"tau_bc": 1.0, "tau_da": 50.0},
    })
    out = tmp_path / "out"
    assert main(["finite", "--config", config, "--out", str(out)]) == 0
    row = read_table(out / "finite.csv").iloc[0]
    assert row["W"] <= row["W_ideal"] + 1e-12
    assert row["eta"] == pytest.approx(row["eta_ideal"], rel=1e-9)
    assert row["lifetime_exceeded"] == 0


def test_sta_from_detuning_endpoints(tmp_path):
    config = write_config(tmp_path, {
        "physical": LOW_OAM,
        "sta": {"tau": 20.0, "detuning_i": 1.8, "detuning_f": 0.3, "n_samples": 201},
    })
    out = tmp_path / "out"
    assert main(["sta", "--config", config, "--out", str(out)]) == 0
    frame = read_table(out / "sta.csv")
    assert {"t", "rho", "omega", "detuning"} <= set(frame.columns)
    assert frame["detuning"].iloc[0] == pytest.approx(1.8, rel=1e-6)
    assert frame["detuning"].iloc[-1] == pytest.approx(0.3, rel=1e-6)
    summary = read_table(out / "sta_summary.csv").iloc[0]
    assert summary["feasible"] == 1
    assert summary["q_star"] == pytest.approx(1.0, abs=1e-5)


def test_twomode_emits_table_and_grid(tmp_path):
    config = write_config(tmp_path, {
        "physical": LOW_OAM,
        "twomode": {
            "detuning": {"min": 0.05, "max": 1.8, "n_points": 10},
            "detuning_i": 1.8,
            "coupling": {"min": 0.05, "max": 0.3, "n_points": 4},
            "validity_fraction": 0.25,
        },
    })
    out = tmp_path / "out"
    assert main(["twomode", "--config", config, "--out", str(out)]) == 0
    assert len(read_table(out / "twomode_frequencies.csv")) == 10
    assert len(read_table(out / "twomode_efficiency.csv")) == 40


def test_svg_output_is_reproducible(tmp_path):
    config = write_config(tmp_path, {"spectrum": {"detuning": {"min": 0.5, "max": 250.0, "n_points": 20}}})
    first, second = tmp_path / "a", tmp_path / "b"
    for out in (first, second):
        assert main(["spectrum", "--config", config, "--out", str(out), "--format", "csv+svg"]) == 0
    svg = (first / "spectrum.svg").read_bytes()
    assert svg.startswith(b"<?xml")
    assert svg == (second / "spectrum.svg").read_bytes()


def test_plot_subcommand(tmp_path):
    config = write_config(tmp_path, {"spectrum": {"detuning": {"min": 0.5, "max": 250.0, "n_points": 20}}})
    out = tmp_path / "out"
    assert main(["spectrum", "--config", config, "--out", str(out)]) == 0
    csv = str(out / "spectrum.csv")

    target = tmp_path / "branches.svg"
    assert main(["plot", "--csv", csv, "--x", "detuning", "--y", "omega_A", "omega_B",
                 "--out-file", str(target)]) == 0
    assert target.exists()

    missing = tmp_path / "missing.svg"
    assert main(["plot", "--csv", csv, "--x", "detuning", "--y", "omega_Z", "--out-file", str(missing)]) == 2
    assert not missing.exists()


def test_schema_prints_json(capsys):
    assert main(["schema"]) == 0
    schema = json.loads(capsys.readouterr().out)
    assert {"physical", "otto", "langevin"} <= set(schema["properties"])
