"""Smoke tests for the haptosim python module (built extension on PYTHONPATH)."""

import math

import numpy as np
import pytest

import haptosim as hs


def test_grid_and_operators():
    g = hs.Grid.interval(64, 1.0)
    assert g.dim == 1
    assert g.dx == 1.0 / 64

    const = hs.Field(g, 3.0)
    lap = hs.laplacian(const)
    assert np.all(lap.numpy() == 0.0)
    assert hs.integrate(const) == pytest.approx(3.0, rel=1e-14)

    x = (np.arange(64) + 0.5) / 64
    f = hs.Field(g, np.cos(np.pi * x))
    assert hs.integrate(f) == pytest.approx(0.0, abs=1e-12)

    norms = hs.field_norms(const)
    assert norms.sup == 3.0 and norms.min == 3.0

    # numpy round trip
    values = np.random.default_rng(1).uniform(0.0, 1.0, 64)
    assert np.array_equal(hs.Field(g, values).numpy(), values)


def test_conservation_of_haptotaxis_flux():
    g = hs.Grid.rectangle(16, 16)
    rng = np.random.default_rng(2)
    u = hs.Field(g, rng.uniform(0.0, 2.0, 256))
    v = hs.Field(g, rng.uniform(-1.0, 1.0, 256))
    out = hs.haptotaxis_divergence(u, v)
    assert abs(hs.integrate(out)) <= 1e-12


def test_constants_chain():
    k1, delta = hs.k1_delta(2.0, 0.5)
    assert k1 == 0.625
    assert delta == pytest.approx(0.1, abs=1e-15)
    assert hs.eps_2star(0.5, 1.0) == pytest.approx(0.5 / 81.0, rel=1e-15)

    k = hs.compute_constants(2.0, 0.5, 1.0)
    assert k.K2 == 1.6
    assert k.eps_3star <= min(k.eps_star, k.eps_2star)

    with pytest.raises(Exception):
        hs.k1_delta(2.0, 1.0)


def test_phi_routes_agree():
    gamma, A = 0.5, 1.0
    eps = 0.8 * hs.eps_2star(gamma, A)
    assert hs.phi_closed(0.0, gamma, A, eps) == pytest.approx(gamma + eps, rel=1e-14)
    for t in (1.0, 10.0, 50.0):
        closed = hs.phi_closed(t, gamma, A, eps)
        ode = hs.phi_ode(t, gamma, A, eps)
        assert closed == pytest.approx(ode, rel=1e-8)
    assert hs.phi_bound_check(gamma, A, eps)


def test_small_run_conserves_and_stays_positive():
    g = hs.Grid.interval(64, 1.0)
    spec = hs.InitSpec()
    spec.gamma = 0.5
    spec.amp_u = 0.05
    spec.amp_v = 0.2
    spec.amp_w = 0.05
    spec.amp_z = 0.05
    s0 = hs.initial_state(g, spec)

    params = hs.ModelParams(beta=2.0, rho=0.0)
    ctl = hs.StepControl()
    ctl.dt_max = 0.02
    ctl.t_end = 2.0
    ctl.output_every = 0.25

    traj = hs.run(s0, params, ctl)
    assert not traj.aborted
    m0 = traj.rows[0].int_u
    for row in traj.rows:
        assert abs(row.int_u - m0) <= 1e-9 * m0
        assert row.min_u >= -1e-12
        assert row.min_w >= -1e-12
        assert row.min_z >= -1e-12
        assert row.min_v >= 0.0

    again = hs.run(s0, params, ctl)
    assert [r.sup_z for r in again.rows] == [r.sup_z for r in traj.rows]


def test_run_stability_basin():
    cfg = hs.ExperimentConfig()
    cfg.params = hs.ModelParams(beta=2.0, rho=0.0)
    cfg.gamma = 0.5
    cfg.nx = 64
    cfg.ctl.dt_max = 0.01
    cfg.ctl.t_end = 10.0
    cfg.ctl.output_every = 0.5

    rep = hs.run_stability(cfg)
    assert rep.bound_report.horizon_verified == 10.0
    assert rep.bound_report.clean()
    assert rep.u_infty_predicted == pytest.approx(rep.mean_u0, abs=1e-12)
    assert math.isfinite(rep.rate_z)


def test_envelope_and_bound_verification():
    k = hs.compute_constants(2.0, 0.5, 1.0)
    eps = 0.8 * k.eps_3star
    env = hs.build_envelope(k, 0.01, 0.01, eps, 0.0)
    assert env.B == pytest.approx(0.016, rel=1e-12)
    assert env.A == pytest.approx(0.01, rel=1e-12)
    assert env.w_envelope(0.0) == env.A
    assert env.a_envelope(0.0) == pytest.approx(0.5 + eps, rel=1e-13)

    cfg = hs.ExperimentConfig()
    cfg.params = hs.ModelParams(beta=2.0, rho=0.0)
    cfg.gamma, cfg.nx = 0.5, 64
    cfg.ctl.dt_max, cfg.ctl.t_end, cfg.ctl.output_every = 0.01, 5.0, 0.5
    rep = hs.run_stability(cfg)
    again = hs.verify_bounds(rep.trajectory.rows, rep.constants, rep.envelope, 0.0,
                             c_tol=10.0, dx=1.0 / 64, dt=0.01, a0_min=rep.a0_min)
    assert again.clean()
    assert again.horizon_verified == rep.bound_report.horizon_verified


def test_validation_errors_surface_as_python_exceptions():
    with pytest.raises(Exception):
        hs.ModelParams(beta=-1.0)
    g = hs.Grid.interval(64, 1.0)
    spec = hs.InitSpec()
    spec.gamma = 0.1
    spec.amp_u = 0.5
    with pytest.raises(Exception):
        hs.initial_state(g, spec)
