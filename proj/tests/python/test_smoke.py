"""Smoke tests for the python bindings: import, constants, a short run."""

import math

import pytest

import sedsim


def test_constants_and_bohr_radius():
    k = sedsim.PhysicalConstants()
    a = sedsim.bohr_radius(k)
    assert a == pytest.approx(0.529e-8, rel=5e-3)
    assert sedsim.circular_frequency(0.1e-8, k) == pytest.approx(5.03e17, rel=0.01)
    assert sedsim.circular_speed(a, k) == pytest.approx(2.19e8, rel=0.01)


def test_qm_density_peaks_at_bohr_radius():
    a = sedsim.bohr_radius(sedsim.PhysicalConstants())
    assert sedsim.qm_radial_density(0.0, a) == 0.0
    peak = sedsim.qm_radial_density(a, a)
    assert peak > sedsim.qm_radial_density(0.9 * a, a)
    assert peak > sedsim.qm_radial_density(1.1 * a, a)


def test_mode_lattice_and_amplitude_determinism():
    k = sedsim.PhysicalConstants()
    cavity = sedsim.CavityConfig()
    assert sedsim.mode_count(cavity, k) == pytest.approx(2.2e6, rel=0.05)

    cavity.lz = 4085e-8  # reduced lattice keeps construction instant
    f1 = sedsim.FieldRealization(11, cavity, k)
    f2 = sedsim.FieldRealization(11, cavity, k)
    assert f1.n_max == 109
    m1 = f1.amplitudes(9, sedsim.WaveDirection.plus_z, sedsim.Polarization.x)
    m2 = f2.amplitudes(9, sedsim.WaveDirection.plus_z, sedsim.Polarization.x)
    assert m1 == m2

    (ex, ey, ez), (bx, by, bz) = f1.fields_at(1e-16, 1, f1.n_max)
    assert ez == 0.0 and bz == 0.0
    assert math.isfinite(ex) and math.isfinite(by)


def test_short_decay_run():
    cfg = sedsim.RunConfig.from_json("{}")
    cfg.zero_field = True
    cfg.r0 = 0.3e-8
    cfg.t_end = 2e-13
    cfg.snapshot_times = []
    cfg.trajectory_sample_dt = 1e-14
    cfg.checkpoint_interval = 0.0
    cfg.progress_interval = 0.0
    cfg.apply_override("integrator.rel_tol", "1e-7")
    cfg.apply_override("integrator.abs_tol_vel", "20")

    run = sedsim.run_single(cfg, 1)
    assert run.completed
    assert run.status == "completed"
    # radiation reaction alone shrinks the orbit
    assert run.final_r < cfg.r0
    assert run.histogram.total_time == pytest.approx(cfg.t_end, rel=1e-9)
    assert len(run.trajectory) > 10


def test_campaign_snapshots():
    cfg = sedsim.RunConfig()
    cfg.cavity.lz = 4085e-8
    cfg.t_end = 1e-15
    cfg.snapshot_times = [5e-16, 1e-15]
    cfg.trajectory_sample_dt = 0.0
    cfg.checkpoint_interval = 0.0
    cfg.progress_interval = 0.0
    cfg.apply_override("integrator.rel_tol", "1e-7")
    cfg.apply_override("integrator.abs_tol_vel", "20")

    runs, snapshots = sedsim.run_campaign(cfg, [1, 2], workers=2)
    assert len(runs) == 2 and len(snapshots) == 2
    assert snapshots[0].run_count == 2
    assert 0.0 <= snapshots[0].l1_to_qm <= 2.0
    r_centers, p = snapshots[1].density
    assert len(r_centers) == len(p) == 500
