"""Virtual experiment: sweep the probe detuning, measure where it lands.

A Scene bundles the vapor cell, the control beam, the probe launch
parameters, the transverse grid and the detector distance.  run_point
answers, for one two-photon detuning: what is the ray-optics exit angle,
the wave-optics pointing angle (far-field centroid drift over the flight
to the detector), the transmitted power fraction, and the far-field spot
position and size.  Sweeps, the angular-dispersion slope and the
spectral-resolution search are built on top of that single primitive.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .medium import ControlField, MediumParams
from .rays import exit_angle, trace_ray
from .waves import (
    Grid1D,
    GuardBandError,
    ZeroPowerError,
    beam_width,
    centered_grid,
    centroid,
    make_gaussian_probe,
    propagate_free,
    propagate_medium,
    transmission,
)

__all__ = [
    "ProbeSpec",
    "Scene",
    "SweepRow",
    "default_scene",
    "estimate_parameters",
    "run_point",
    "detuning_sweep",
    "angular_dispersion",
    "spectral_resolution",
    "GLASS_DISPERSION_PER_NM",
    "C_LIGHT",
]

TWO_PI = 2.0 * math.pi

# Speed of light, cm/s.
C_LIGHT = 2.99792458e10

# Magnitude of d(theta)/d(lambda) for a conventional glass prism, rad/nm.
GLASS_DISPERSION_PER_NM = 1e-4

# Transmission below which a sweep row is marked as barely trustworthy.
LOW_POWER_FLOOR = 1e-9

# Far-centroid pointing differences below this angle (rad) are noise.
DISPERSION_NOISE_FLOOR = 1e-12


@dataclass(frozen=True)
class ProbeSpec:
    """Probe launch: 1/e field radius ``waist`` and transverse ``offset`` (cm)."""

    waist: float
    offset: float

    def __post_init__(self) -> None:
        if self.waist <= 0.0:
            raise ValueError("probe waist must be positive")


@dataclass(frozen=True)
class Scene:
    medium: MediumParams
    control: ControlField
    probe: ProbeSpec
    detector_distance: float
    grid: Grid1D
    n_slices: int = 200
    ray_steps: int = 10_000

    def __post_init__(self) -> None:
        if self.detector_distance <= 0.0:
            raise ValueError("detector_distance must be positive")
        if self.n_slices < 50:
            raise ValueError("n_slices must be at least 50")
        if self.ray_steps < 100:
            raise ValueError("ray_steps must be at least 100")
        if abs(self.probe.offset - self.control.center) > 2.0 * self.control.waist:
            raise ValueError("probe offset must lie within 2 control waists")


@dataclass(frozen=True)
class SweepRow:
    """One detuning's worth of measurements.  Angles rad, lengths cm.

    ``theta_ray`` comes from the traced ray, ``theta_wave`` from the
    far-field centroid drift (far minus exit, divided by the detector
    distance).  Wave quantities are NaN when no power survives the cell;
    the ``flags`` tuple says why a row needs care rather than dropping it.
    """

    detuning: float
    theta_ray: float
    theta_wave: float
    transmission: float
    far_centroid: float
    far_width: float
    flags: tuple[str, ...]


# Default scene: a 7.5 cm rubidium-line cell driven by a wide control beam,
# probe launched on the control-beam shoulder (waist/sqrt(2), the steepest
# point of the Rabi profile), detector 230 cm past the cell exit.  Values
# are kept in the laboratory units of the config file (nm, mm, Hz) and
# converted with exactly the expressions used by scene_from_config, so the
# empty config and default_scene() agree bit for bit.
DEFAULT_WAVELENGTH_NM = 795.0
DEFAULT_DENSITY = 3e11
DEFAULT_GAMMA_R_HZ = 5.75e6
DEFAULT_GAMMA_HZ = 1.5e6
DEFAULT_GAMMA_CB_HZ = 1e3
DEFAULT_CELL_LENGTH_MM = 75.0
DEFAULT_CONTROL_RABI_HZ = 1e7
DEFAULT_CONTROL_WAIST_MM = 36.0
DEFAULT_CONTROL_CENTER_MM = 0.0
# 0.7 mm intensity FWHM expressed as a 1/e field radius.
DEFAULT_PROBE_WAIST_MM = 0.7 / math.sqrt(2.0 * math.log(2.0))
DEFAULT_PROBE_OFFSET_MM = DEFAULT_CONTROL_WAIST_MM / math.sqrt(2.0)
DEFAULT_DETECTOR_DISTANCE_MM = 2300.0
DEFAULT_GRID_POINTS = 16_384
DEFAULT_GRID_SPAN_MM = 128.0
DEFAULT_N_SLICES = 200
DEFAULT_RAY_STEPS = 10_000
DEFAULT_SWEEP_MIN_HZ = -2e7
DEFAULT_SWEEP_MAX_HZ = 2e7
DEFAULT_SWEEP_POINTS = 101


def default_scene() -> Scene:
    return Scene(
        medium=MediumParams(
            wavelength=DEFAULT_WAVELENGTH_NM * 1e-7,
            density=DEFAULT_DENSITY,
            gamma_r=TWO_PI * DEFAULT_GAMMA_R_HZ,
            gamma=TWO_PI * DEFAULT_GAMMA_HZ,
            gamma_cb=TWO_PI * DEFAULT_GAMMA_CB_HZ,
            cell_length=DEFAULT_CELL_LENGTH_MM * 0.1,
        ),
        control=ControlField(
            omega_peak=TWO_PI * DEFAULT_CONTROL_RABI_HZ,
            waist=DEFAULT_CONTROL_WAIST_MM * 0.1,
            center=DEFAULT_CONTROL_CENTER_MM * 0.1,
        ),
        probe=ProbeSpec(
            waist=DEFAULT_PROBE_WAIST_MM * 0.1, offset=DEFAULT_PROBE_OFFSET_MM * 0.1
        ),
        detector_distance=DEFAULT_DETECTOR_DISTANCE_MM * 0.1,
        grid=centered_grid(DEFAULT_GRID_POINTS, DEFAULT_GRID_SPAN_MM * 0.1),
        n_slices=DEFAULT_N_SLICES,
        ray_steps=DEFAULT_RAY_STEPS,
    )


def estimate_parameters() -> tuple[MediumParams, ControlField, float, float]:
    """Dense-cell conditions for the order-of-magnitude deflection estimate.

    Returns (medium, control, detuning, launch offset).  A hot cell
    (10^13 cm^-3, Doppler-broadened optical linewidth) driven by a weak,
    tightly focused control beam deflects the probe by roughly 0.1 rad.
    """
    medium = MediumParams(
        wavelength=7.95e-5,
        density=1e13,
        gamma_r=TWO_PI * 5.75e6,
        gamma=TWO_PI * 300e6,
        gamma_cb=TWO_PI * 1e3,
        cell_length=10.0,
    )
    control = ControlField(omega_peak=TWO_PI * 1e6, waist=0.05, center=0.0)
    delta = TWO_PI * 1e3
    offset = control.waist / math.sqrt(2.0)
    return medium, control, delta, offset


def run_point(scene: Scene, delta: float) -> SweepRow:
    """Measure one detuning: trace the ray, propagate the wave, read the detector."""
    flags: list[str] = []
    traj = trace_ray(
        delta, scene.probe.offset, 0.0, scene.medium, scene.control, scene.ray_steps
    )
    theta_ray = exit_angle(traj)
    if traj.paraxial_violation:
        flags.append("paraxial")

    nan = float("nan")
    theta_wave = far_centroid = far_width = nan
    trans = nan
    try:
        probe = make_gaussian_probe(
            scene.grid, scene.medium.wavelength, scene.probe.waist, scene.probe.offset
        )
        out = propagate_medium(
            probe, delta, scene.medium, scene.control, scene.n_slices
        )
        trans = transmission(probe, out)
        if trans == 0.0:
            raise ZeroPowerError("nothing transmitted")
        if trans < LOW_POWER_FLOOR:
            flags.append("low_power")
        exit_centroid = centroid(out)
        far = propagate_free(out, scene.detector_distance)
        far_centroid = centroid(far)
        far_width = beam_width(far)
        theta_wave = (far_centroid - exit_centroid) / scene.detector_distance
    except ZeroPowerError:
        trans = 0.0
        flags.append("no_power")
    except GuardBandError:
        flags.append("guard_band")

    return SweepRow(
        detuning=delta,
        theta_ray=theta_ray,
        theta_wave=theta_wave,
        transmission=trans,
        far_centroid=far_centroid,
        far_width=far_width,
        flags=tuple(flags),
    )


def detuning_sweep(
    scene: Scene,
    d_min: float,
    d_max: float,
    n_points: int,
    threads: int | None = None,
) -> list[SweepRow]:
    """run_point over n_points detunings evenly spaced on [d_min, d_max].

    ``threads`` caps the worker pool (default: hardware parallelism).  Each
    point is computed independently by identical code, so results do not
    depend on the pool size; rows come back in detuning order.
    """
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    if not d_max > d_min:
        raise ValueError("d_max must exceed d_min")
    step = (d_max - d_min) / (n_points - 1)
    detunings = [d_min + i * step for i in range(n_points)]
    workers = threads if threads is not None else (os.cpu_count() or 1)
    if workers < 1:
        raise ValueError("threads must be at least 1")
    if workers == 1:
        return [run_point(scene, d) for d in detunings]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda d: run_point(scene, d), detunings))


def angular_dispersion(
    scene: Scene, d_ref: float = 0.0, step: float = TWO_PI * 100.0
) -> tuple[float, bool]:
    """Wavelength dispersion d(theta)/d(lambda) around ``d_ref``, in rad/nm.

    Central difference of theta_wave over +-``step`` rad/s, converted with
    d(lambda) = -(lambda^2 / 2 pi c) d(delta).  Returns (value, noisy); the
    flag is set when the pointing difference is below the angular noise
    floor, e.g. for an empty cell.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    hi = run_point(scene, d_ref + step)
    lo = run_point(scene, d_ref - step)
    diff = hi.theta_wave - lo.theta_wave
    slope = diff / (2.0 * step)
    lam_per_rad = scene.medium.wavelength**2 / (TWO_PI * C_LIGHT) * 1e7  # nm s/rad
    noisy = not math.isfinite(diff) or abs(diff) < DISPERSION_NOISE_FLOOR
    return -slope / lam_per_rad, noisy


def _spots_resolved(scene: Scene, d_ref: float, separation: float) -> bool | None:
    """Rayleigh-style test: two detunings ``separation`` apart land as two
    far-field spots; resolved when centroid distance >= mean spot width.
    Returns None when either spot carries no usable power."""
    a = run_point(scene, d_ref - 0.5 * separation)
    b = run_point(scene, d_ref + 0.5 * separation)
    if not (math.isfinite(a.far_centroid) and math.isfinite(b.far_centroid)):
        return None
    gap = abs(b.far_centroid - a.far_centroid)
    return gap >= 0.5 * (a.far_width + b.far_width)


def spectral_resolution(
    scene: Scene,
    d_ref: float = 0.0,
    initial_separation: float = TWO_PI * 1e3,
    max_separation: float = TWO_PI * (DEFAULT_SWEEP_MAX_HZ - DEFAULT_SWEEP_MIN_HZ),
    rel_tol: float = 1e-3,
) -> float:
    """Resolving power R = omega / d_omega_min at the carrier frequency.

    d_omega_min is the smallest detuning separation whose two far-field
    spots pass the Rayleigh test, found by doubling until resolved and then
    bisecting.  Returns NaN (unresolvable) when the search passes
    ``max_separation`` (the default sweep span) or the spots run out of
    transmitted power first.
    """
    omega = TWO_PI * C_LIGHT / scene.medium.wavelength
    lo = 0.0
    hi = initial_separation
    while True:
        verdict = _spots_resolved(scene, d_ref, hi)
        if verdict:
            break
        if verdict is None or hi > max_separation:
            return float("nan")
        lo = hi
        hi *= 2.0
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if _spots_resolved(scene, d_ref, mid):
            hi = mid
        else:
            lo = mid
    return omega / hi


def scene_with_detector(scene: Scene, detector_distance: float) -> Scene:
    """Same experiment, detector moved to ``detector_distance`` (cm)."""
    return replace(scene, detector_distance=detector_distance)
