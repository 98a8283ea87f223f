"""Scans, presets, CSV round trips, and verification runs."""

import math

import numpy as np
import pytest

from tjcm import (
    AtomId,
    InvalidParameterError,
    ModelParams,
    ResourceRefusalError,
    ScanConfig,
    TimeSeries,
    UsageError,
    coefficient_table,
    coherent_weights,
    eigen_table,
    read_csv,
    reduced_state,
    run_preset,
    run_scan,
    run_verify,
    write_csv,
)
from tjcm.observables import bloch, entropy_squeezing, eur_residual, variance_squeezing, von_neumann
from tjcm.scan import CHANNEL_NAMES, PRESET_CONFIGS, validate_channels


def small_cfg(**kw):
    defaults = dict(
        params=ModelParams(alpha=1.5, g=0.5, l=1),
        t_max=4.0,
        steps=33,
        channels=("inv1", "inv2", "sy1", "ey1", "ey2", "ex1", "fy2", "gamma2", "eur1"),
    )
    defaults.update(kw)
    return ScanConfig(**defaults)


def test_channel_validation():
    assert validate_channels(("inv1", "jcm_ey")) == ("inv1", "jcm_ey")
    with pytest.raises(UsageError) as err:
        validate_channels(("inv1", "nope"))
    # the error names every valid channel
    for name in CHANNEL_NAMES:
        assert name in str(err.value)
    with pytest.raises(UsageError):
        validate_channels(())


def test_config_validation():
    with pytest.raises(InvalidParameterError):
        small_cfg(t_max=0.0)
    with pytest.raises(InvalidParameterError):
        small_cfg(steps=1)


def test_scan_initial_values():
    ts = run_scan(small_cfg())
    assert ts.grid[0] == 0.0
    assert ts.grid[-1] == 4.0
    assert ts.channels["inv1"][0] == pytest.approx(1.0, abs=1e-9)
    assert ts.channels["inv2"][0] == pytest.approx(1.0, abs=1e-9)
    assert ts.channels["ey1"][0] == pytest.approx(0.0, abs=1e-9)
    assert ts.channels["gamma2"][0] == pytest.approx(0.0, abs=1e-9)


def test_scan_matches_pointwise_pipeline():
    cfg = small_cfg()
    ts = run_scan(cfg)
    w = coherent_weights(1.5)
    blocks = eigen_table(w.n_max, 1, 0.5)
    for i in (0, 7, 32):
        T = float(ts.grid[i])
        table = coefficient_table(blocks, T)
        s1 = reduced_state(w, table, 1, AtomId.FIRST)
        s2 = reduced_state(w, table, 1, AtomId.SECOND)
        b1, b2 = bloch(s1), bloch(s2)
        assert ts.channels["inv1"][i] == b1.sz
        assert ts.channels["sy1"][i] == b1.sy
        assert ts.channels["ey1"][i] == entropy_squeezing(b1, "y")
        assert ts.channels["ey2"][i] == entropy_squeezing(b2, "y")
        assert ts.channels["ex1"][i] == entropy_squeezing(b1, "x")
        assert ts.channels["fy2"][i] == variance_squeezing(b2, "y")
        assert ts.channels["gamma2"][i] == von_neumann(s2)
        assert ts.channels["eur1"][i] == eur_residual(b1)


def test_scan_channel_order_preserved():
    cfg = small_cfg(channels=("ey2", "inv1", "jcm_sz"))
    ts = run_scan(cfg)
    assert list(ts.channels) == ["ey2", "inv1", "jcm_sz"]


def test_scan_deterministic():
    a = run_scan(small_cfg())
    b = run_scan(small_cfg())
    assert np.array_equal(a.grid, b.grid)
    for name in a.channels:
        assert np.array_equal(a.channels[name], b.channels[name])


def test_presets_frozen():
    assert PRESET_CONFIGS["fig1"].params == ModelParams(alpha=5.0, g=0.5, l=1)
    assert PRESET_CONFIGS["fig2"].params == ModelParams(alpha=5.0, g=0.5, l=2)
    assert PRESET_CONFIGS["fig4"].params == ModelParams(alpha=5.0, g=1.0, l=1)
    for cfg in PRESET_CONFIGS.values():
        assert cfg.t_max == 25.0 and cfg.steps == 2500
    assert PRESET_CONFIGS["fig1"].channels[:4] == ("inv1", "inv2", "ey1", "ey2")


def test_preset_fig3_merges_both_transition_parameters():
    ts = run_preset("fig3", t_max=2.0, steps=9)
    assert list(ts.channels) == ["gamma2_l1", "gamma2_l2"]
    ref_l1 = run_scan(
        ScanConfig(params=ModelParams(alpha=5.0, g=0.5, l=1), t_max=2.0,
                   steps=9, channels=("gamma2",))
    )
    ref_l2 = run_scan(
        ScanConfig(params=ModelParams(alpha=5.0, g=0.5, l=2), t_max=2.0,
                   steps=9, channels=("gamma2",))
    )
    assert np.array_equal(ts.channels["gamma2_l1"], ref_l1.channels["gamma2"])
    assert np.array_equal(ts.channels["gamma2_l2"], ref_l2.channels["gamma2"])


def test_unknown_preset():
    with pytest.raises(UsageError):
        run_preset("fig9")


def test_csv_round_trip_bit_exact(tmp_path):
    ts = run_scan(small_cfg())
    path = tmp_path / "scan.csv"
    write_csv(ts, str(path))
    back = read_csv(str(path))
    assert np.array_equal(back.grid, ts.grid)
    assert list(back.channels) == list(ts.channels)
    for name in ts.channels:
        assert np.array_equal(back.channels[name], ts.channels[name])
    # identical config -> identical bytes
    path2 = tmp_path / "scan2.csv"
    write_csv(run_scan(small_cfg()), str(path2))
    assert path.read_bytes() == path2.read_bytes()
    header = path.read_text(encoding="utf-8").splitlines()[0]
    assert header.split(",")[0] == "T"


def test_csv_rejects_foreign_file(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("a,b\n1,2\n")
    with pytest.raises(UsageError):
        read_csv(str(p))


def test_time_series_shape_guard():
    with pytest.raises(InvalidParameterError):
        TimeSeries(grid=np.zeros(4), channels={"inv1": np.zeros(3)})


def test_verify_passes_small_config():
    report = run_verify(small_cfg(), 10)
    assert report.passed
    assert report.max_state_dev < 1e-8
    assert report.max_eur_violation <= 1e-10
    assert report.norm_drift < 1e-7
    assert "PASS" in report.summary()


def test_verify_vacuum_field_trivially_periodic():
    cfg = small_cfg(params=ModelParams(alpha=0.0, g=1.0, l=1))
    report = run_verify(cfg, 10)
    assert report.passed


def test_verify_detects_injected_fault():
    report = run_verify(small_cfg(), 10, inject_fault=True)
    assert not report.passed
    assert report.max_state_dev > 1e-8
    assert "FAIL" in report.summary()


def test_verify_sample_count_guard():
    with pytest.raises(UsageError):
        run_verify(small_cfg(), 9)


def test_verify_resource_refusal():
    with pytest.raises(ResourceRefusalError) as err:
        run_verify(small_cfg(), 10, max_oracle_dim=16)
    assert "alpha" in str(err.value)


def test_verify_deterministic_times():
    a = run_verify(small_cfg(), 12)
    b = run_verify(small_cfg(), 12)
    assert np.array_equal(a.times, b.times)
    assert a.max_state_dev == b.max_state_dev


def test_preset_fig1_second_atom_squeezing_profile(preset_series):
    """fig1 second-atom witness: deep early squeezing, then a slow climb
    to near-maximal mixing peaking around half the revival time pi*alpha."""
    ts = preset_series["fig1"]
    grid, ey2 = ts.grid, ts.channels["ey2"]
    early = (grid > 0.0) & (grid <= 3.0)
    assert float(ey2[early].min()) < -0.15
    t_peak = float(grid[int(np.argmax(ey2))])
    assert abs(t_peak - math.pi * 5.0) < 2.0
    # the peak value closes on the maximal-mixing bound 2 - sqrt(2)
    assert float(ey2.max()) == pytest.approx(2.0 - math.sqrt(2.0), abs=5e-4)
