"""Ray integrator: closed-form stubs, convergence, scene symmetries."""

import math

import pytest

from eitprism.medium import ControlField, MediumParams
from eitprism.rays import (
    Trajectory,
    deflection_estimate,
    exit_angle,
    integrate_gradient,
    trace_ray,
)
from eitprism.experiment import default_scene, estimate_parameters

TWO_PI = 2.0 * math.pi


def test_linear_gradient_stub():
    # d2x/dz2 = g: exit angle theta0 + g*L, position x0 + theta0*L + g*L^2/2.
    g, x0, theta0, length = 3.7e-4, 0.12, 1.5e-3, 7.5
    traj = integrate_gradient(lambda x: g, x0, theta0, length, 4000)
    assert exit_angle(traj) == pytest.approx(theta0 + g * length, rel=1e-12)
    assert traj.exit.x == pytest.approx(
        x0 + theta0 * length + 0.5 * g * length**2, rel=1e-12
    )
    assert not traj.paraxial_violation


def test_harmonic_gradient_stub():
    # d2x/dz2 = -k^2 x: x(z) = x0 cos(kz) + (theta0/k) sin(kz).
    k, x0, theta0, length = 2.4, 0.3, 0.01, 1.8
    traj = integrate_gradient(lambda x: -k * k * x, x0, theta0, length, 5000)
    expect_x = x0 * math.cos(k * length) + theta0 / k * math.sin(k * length)
    expect_v = -x0 * k * math.sin(k * length) + theta0 * math.cos(k * length)
    assert traj.exit.x == pytest.approx(expect_x, rel=1e-9)
    assert exit_angle(traj) == pytest.approx(expect_v, rel=1e-8)


def test_trajectory_shape():
    traj = integrate_gradient(lambda x: 0.0, 0.2, 0.0, 5.0, 250)
    assert len(traj.states) == 251
    assert traj.entry.z == 0.0 and traj.entry.x == 0.2 and traj.entry.angle == 0.0
    zs = [s.z for s in traj.states]
    assert all(b > a for a, b in zip(zs, zs[1:]))
    steps = [b - a for a, b in zip(zs, zs[1:])]
    assert max(steps) - min(steps) < 1e-12


def test_integrator_validation():
    with pytest.raises(ValueError):
        integrate_gradient(lambda x: 0.0, 0.0, 0.0, -1.0, 100)
    with pytest.raises(ValueError):
        integrate_gradient(lambda x: 0.0, 0.0, 0.0, 1.0, 0)
    sc = default_scene()
    with pytest.raises(ValueError):
        trace_ray(0.0, sc.probe.offset, 0.0, sc.medium, sc.control, n_steps=50)


def test_vacuum_cell_straight_ray():
    sc = default_scene()
    empty = MediumParams(
        wavelength=sc.medium.wavelength,
        density=0.0,
        gamma_r=sc.medium.gamma_r,
        gamma=sc.medium.gamma,
        gamma_cb=sc.medium.gamma_cb,
        cell_length=sc.medium.cell_length,
    )
    traj = trace_ray(TWO_PI * 1e4, 0.8, 2e-3, empty, sc.control, 1000)
    assert exit_angle(traj) == 2e-3
    assert traj.exit.x == pytest.approx(0.8 + 2e-3 * empty.cell_length, rel=1e-12)


def test_zero_control_straight_ray():
    sc = default_scene()
    quiet = ControlField(omega_peak=0.0, waist=sc.control.waist)
    traj = trace_ray(TWO_PI * 1e4, 0.8, 0.0, sc.medium, quiet, 1000)
    assert exit_angle(traj) == 0.0
    assert traj.exit.x == 0.8


def test_resonant_ray_nearly_straight():
    # On two-photon resonance the dispersive gradient vanishes to first
    # order; a second-order remnant of the residual absorption survives.
    sc = default_scene()
    traj = trace_ray(0.0, sc.probe.offset, 0.0, sc.medium, sc.control, 2000)
    assert abs(exit_angle(traj)) < 1e-9


def test_step_halving_convergence():
    sc = default_scene()
    args = (TWO_PI * 1e4, sc.probe.offset, 0.0, sc.medium, sc.control)
    coarse = exit_angle(trace_ray(*args, n_steps=10_000))
    fine = exit_angle(trace_ray(*args, n_steps=20_000))
    assert abs(fine - coarse) < 1e-8


def test_mirror_symmetry():
    sc = default_scene()
    for delta in (TWO_PI * 1e4, TWO_PI * 1e3):
        plus = exit_angle(
            trace_ray(delta, sc.probe.offset, 0.0, sc.medium, sc.control, 2000)
        )
        minus = exit_angle(
            trace_ray(delta, -sc.probe.offset, 0.0, sc.medium, sc.control, 2000)
        )
        assert minus == pytest.approx(-plus, rel=1e-12)


def test_reversed_gradient_negates_angle():
    g = 2.2e-4
    plus = exit_angle(integrate_gradient(lambda x: g, 0.1, 0.0, 7.5, 500))
    minus = exit_angle(integrate_gradient(lambda x: -g, 0.1, 0.0, 7.5, 500))
    assert minus == -plus


def test_paraxial_flag():
    traj = integrate_gradient(lambda x: 0.0, 0.0, 0.6, 1.0, 100)
    assert traj.paraxial_violation
    traj = integrate_gradient(lambda x: 0.3, 0.0, 0.0, 2.0, 100)
    assert traj.paraxial_violation  # angle reaches 0.6 along the way
    sc = default_scene()
    assert not trace_ray(
        TWO_PI * 1e4, sc.probe.offset, 0.0, sc.medium, sc.control, 1000
    ).paraxial_violation


def test_deflection_estimate_dense_cell():
    # The one-line thin-cell estimate on the dense hot-cell parameter set.
    medium, control, delta, offset = estimate_parameters()
    theta = deflection_estimate(delta, offset, medium, control)
    assert theta == pytest.approx(-0.0996015, rel=1e-5)
    assert 0.03 <= abs(theta) <= 0.3


def test_deflection_estimate_trivial_zeros():
    medium, control, delta, offset = estimate_parameters()
    assert deflection_estimate(delta, control.center, medium, control) == 0.0
    # On resonance the dispersive part vanishes; in the dilute cell the
    # second-order absorption remnant is negligible too.
    sc = default_scene()
    assert abs(deflection_estimate(0.0, sc.probe.offset, sc.medium, sc.control)) < 1e-9


def test_estimate_matches_trace_for_small_walk():
    # When the ray barely moves transversely, the frozen-gradient estimate
    # must agree with the integrated ray.
    sc = default_scene()
    delta = TWO_PI * 1e4
    est = deflection_estimate(delta, sc.probe.offset, sc.medium, sc.control)
    traj = trace_ray(delta, sc.probe.offset, 0.0, sc.medium, sc.control, 4000)
    walk = abs(traj.exit.x - sc.probe.offset)
    assert walk < sc.control.waist / 10.0
    assert exit_angle(traj) == pytest.approx(est, rel=0.05)
