import json
import math

import numpy as np
import pytest

import catlattice.cli as cli
from catlattice import (
    ConfigError,
    ScenarioConfig,
    build_config,
    config_from_metadata,
    gradient_for_frequency,
    load_config_file,
    load_preset,
    read_table,
    run_bloch,
    run_oscillator,
    run_spectrum,
    run_sweep,
)
from catlattice.selftest import SelftestReport


def test_build_config_defaults_and_overrides():
    cfg = build_config("oscillator", {"kappa0": 0.5})
    assert cfg.kind == "oscillator"
    assert cfg.params["kappa0"] == 0.5
    assert cfg.params["kappa"] == 1.0
    assert cfg.params["beta0"] == -cfg.params["alpha0"]


def test_unknown_key_rejected():
    with pytest.raises(ConfigError):
        build_config("oscillator", {"kapa0": 0.5})
    with pytest.raises(ConfigError):
        build_config("nonsense", {})


def test_config_file_round_trip(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text(
        "[oscillator]\nkappa0 = 0.4\nsigma0 = 1.5\nz_max = 8.0\n")
    cfg = load_config_file(str(path), "oscillator")
    assert cfg.params["kappa0"] == 0.4
    assert cfg.params["sigma0"] == 1.5


def test_config_file_unknown_key_and_section(tmp_path):
    bad_key = tmp_path / "k.ini"
    bad_key.write_text("[oscillator]\nkappa0 = 0.4\ntypo_key = 1\n")
    with pytest.raises(ConfigError):
        load_config_file(str(bad_key), "oscillator")
    bad_section = tmp_path / "s.ini"
    bad_section.write_text("[oscillator]\nkappa0 = 0.4\n\n[junk]\na = 1\n")
    with pytest.raises(ConfigError):
        load_config_file(str(bad_section), "oscillator")


def test_alpha0_mean_photons_conflict():
    with pytest.raises(ConfigError):
        build_config("bloch", {"alpha0": 3.0, "mean_photons": 9.0})
    cfg = build_config("bloch", {"mean_photons": 16.0})
    assert cfg.params["alpha0"] == 4.0


def test_preset_fidelity():
    # presets must resolve to the exact quoted parameter values
    c4 = load_preset("fig1-curve4")
    assert c4.params["kappa0"] == math.sqrt(2.0)
    assert c4.params["sigma0"] == 4.0
    c2 = load_preset("fig2c-curve2")
    assert c2.params["gradient"] == 7.22
    b1 = load_preset("bo-curve1")
    assert b1.params["gradient"] == gradient_for_frequency(3.61)
    with pytest.raises(ConfigError):
        load_preset("fig1-curve9")
    with pytest.raises(ConfigError):
        load_preset("fig1-curve4", expected_kind="bloch")


def test_oscillator_table_and_determinism():
    cfg = build_config("oscillator", {"kappa0": 0.2, "z_max": 10.0,
                                      "num_z": 101})
    t1 = run_oscillator(cfg)
    t2 = run_oscillator(cfg)
    assert t1.to_tsv_text() == t2.to_tsv_text()
    for col in ("z", "survival_prob", "G", "ln_G", "markov_reference"):
        assert col in t1.columns
    assert t1.metadata["result.bound_count"] == "0"
    g = t1.column("G")
    assert g[0] == 1.0
    assert np.all(np.diff(t1.column("z")) > 0)


def test_table_file_round_trip(tmp_path):
    cfg = build_config("oscillator", {"kappa0": 3.0, "z_max": 6.0,
                                      "num_z": 61})
    table = run_oscillator(cfg)
    out = tmp_path / "osc.tsv"
    table.write(str(out))
    back = read_table(str(out))
    assert back.columns == table.columns
    np.testing.assert_array_equal(back.data, table.data)
    assert back.metadata == table.metadata


def test_metadata_rebuilds_config(tmp_path):
    cfg = build_config("oscillator", {"kappa0": 1.7, "sigma0": 0.3,
                                      "z_max": 7.0})
    table = run_oscillator(cfg)
    rebuilt = config_from_metadata(table.metadata)
    assert rebuilt.kind == cfg.kind
    assert rebuilt.params == cfg.params
    # and the rebuilt config reproduces the run bitwise
    assert run_oscillator(rebuilt).to_tsv_text() == table.to_tsv_text()


def test_tree_format_is_json():
    cfg = build_config("oscillator", {"z_max": 3.0, "num_z": 31})
    payload = json.loads(run_oscillator(cfg).to_tree_text())
    assert set(payload) == {"metadata", "columns"}
    assert "G" in payload["columns"]
    assert len(payload["columns"]["z"]) == 31


def test_spectrum_runner():
    cfg = build_config("spectrum", {"kappa0_values": [0.2, 3.0],
                                    "sigma0_values": [0.0]})
    table = run_spectrum(cfg)
    counts = table.column("bound_count")
    np.testing.assert_array_equal(counts, [0.0, 2.0])
    thr = table.column("threshold_kappa0")
    assert abs(thr[0] - math.sqrt(2.0)) < 1e-3


def test_bloch_isolated_guide_keeps_coherence():
    cfg = build_config("bloch", {
        "num_guides": 1, "gradient": 0.0, "device_length": 0.3,
        "x_half_width": 0.01536, "num_points": 512,
        "absorber_width": 0.004, "mean_photons": 9.0,
    })
    table = run_bloch(cfg)
    assert np.all(np.abs(table.column("G") - 1.0) < 1e-3)
    # no tilt, so no Bloch period and no revival tracking
    assert "result.bloch_period" not in table.metadata


def test_sweep_runs_in_input_order():
    base = {"z_max": 5.0, "num_z": 51}
    cfg = build_config("sweep", {"scenario": "oscillator",
                                 "parameter": "kappa0",
                                 "values": [0.2, 3.0]},
                       base=build_config("oscillator", base))
    tables, summary = run_sweep(cfg, threads=3)
    assert [t.metadata["config.kappa0"] for t in tables] == ["0.2", "3.0"]
    assert summary.column("kappa0").tolist() == [0.2, 3.0]


def test_sweep_over_mean_photons_drops_alpha0():
    base = build_config("bloch", {
        "num_guides": 1, "gradient": 0.0, "device_length": 0.05,
        "x_half_width": 0.01536, "num_points": 512,
        "absorber_width": 0.004,
    })
    cfg = build_config("sweep", {"scenario": "bloch",
                                 "parameter": "mean_photons",
                                 "values": [9.0, 36.0]}, base=base)
    tables, summary = run_sweep(cfg, threads=2)
    assert [t.metadata["result.mean_photons"] for t in tables] == ["9.0", "36.0"]


def test_cli_exit_codes(tmp_path, monkeypatch):
    out = tmp_path / "a.tsv"
    assert cli.main(["oscillator", "--preset", "fig1-curve3",
                     "--out", str(out)]) == 0
    assert out.exists()

    assert cli.main(["oscillator", "--preset", "no-such-preset"]) == 1
    bad = tmp_path / "bad.ini"
    bad.write_text("[oscillator]\nbogus = 1\n")
    assert cli.main(["oscillator", "--config", str(bad)]) == 1

    wild = tmp_path / "wild.ini"
    wild.write_text("[bloch]\ngradient = 4000.0\ndevice_length = 0.01\n"
                    "mean_photons = 9\n")
    assert cli.main(["bloch", "--config", str(wild)]) == 2

    assert cli.main(["selftest"]) == 0
    failing = SelftestReport(checks=[("demo-check", False, "forced")])
    monkeypatch.setattr(cli, "run_selftest", lambda: failing)
    assert cli.main(["selftest"]) == 3


def test_cli_tree_sidecar(tmp_path):
    out = tmp_path / "t.tsv"
    assert cli.main(["oscillator", "--preset", "fig1-curve4",
                     "--out", str(out), "--format", "tree"]) == 0
    sidecar = tmp_path / "t.tsv.json"
    payload = json.loads(sidecar.read_text())
    assert payload["metadata"]["scenario"] == "oscillator"


def test_scenario_config_type():
    cfg = ScenarioConfig(kind="oscillator", params={"kappa": 1.0})
    assert cfg.get("kappa") == 1.0
