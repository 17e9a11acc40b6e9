"""Plain-text run configuration.

One ``key: value`` pair per line, ``#`` starts a comment, blank lines are
ignored.  Keys carry their unit in the name (laboratory units: nm, mm, Hz,
cm^-3); the library itself works in cm and rad/s, and the conversion
happens exactly once, in :func:`scene_from_config`.  Unknown and duplicate
keys are errors: a silently ignored typo in a physics run costs more than
the retype.  An empty document yields the default experiment.

:func:`serialize_config` writes the canonical form (fixed key order,
shortest float representation), so parse -> serialize -> parse is the
identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .experiment import (
    DEFAULT_CELL_LENGTH_MM,
    DEFAULT_CONTROL_CENTER_MM,
    DEFAULT_CONTROL_RABI_HZ,
    DEFAULT_CONTROL_WAIST_MM,
    DEFAULT_DENSITY,
    DEFAULT_DETECTOR_DISTANCE_MM,
    DEFAULT_GAMMA_CB_HZ,
    DEFAULT_GAMMA_HZ,
    DEFAULT_GAMMA_R_HZ,
    DEFAULT_GRID_POINTS,
    DEFAULT_GRID_SPAN_MM,
    DEFAULT_N_SLICES,
    DEFAULT_PROBE_OFFSET_MM,
    DEFAULT_PROBE_WAIST_MM,
    DEFAULT_RAY_STEPS,
    DEFAULT_SWEEP_MAX_HZ,
    DEFAULT_SWEEP_MIN_HZ,
    DEFAULT_SWEEP_POINTS,
    DEFAULT_WAVELENGTH_NM,
    TWO_PI,
    ProbeSpec,
    Scene,
)
from .medium import ControlField, MediumParams
from .waves import centered_grid

__all__ = [
    "ConfigError",
    "RunConfig",
    "parse_config",
    "serialize_config",
    "scene_from_config",
    "sweep_bounds",
]


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


@dataclass(frozen=True)
class RunConfig:
    wavelength_nm: float = DEFAULT_WAVELENGTH_NM
    density_cm3: float = DEFAULT_DENSITY
    gamma_r_hz: float = DEFAULT_GAMMA_R_HZ
    gamma_hz: float = DEFAULT_GAMMA_HZ
    gamma_cb_hz: float = DEFAULT_GAMMA_CB_HZ
    cell_length_mm: float = DEFAULT_CELL_LENGTH_MM
    control_rabi_hz: float = DEFAULT_CONTROL_RABI_HZ
    control_waist_mm: float = DEFAULT_CONTROL_WAIST_MM
    control_center_mm: float = DEFAULT_CONTROL_CENTER_MM
    probe_waist_mm: float = DEFAULT_PROBE_WAIST_MM
    probe_offset_mm: float = DEFAULT_PROBE_OFFSET_MM
    detector_distance_mm: float = DEFAULT_DETECTOR_DISTANCE_MM
    grid_points: int = DEFAULT_GRID_POINTS
    grid_span_mm: float = DEFAULT_GRID_SPAN_MM
    n_slices: int = DEFAULT_N_SLICES
    ray_steps: int = DEFAULT_RAY_STEPS
    sweep_min_hz: float = DEFAULT_SWEEP_MIN_HZ
    sweep_max_hz: float = DEFAULT_SWEEP_MAX_HZ
    sweep_points: int = DEFAULT_SWEEP_POINTS


_FIELD_ORDER = [f.name for f in fields(RunConfig)]
_INT_FIELDS = {"grid_points", "n_slices", "ray_steps", "sweep_points"}


def parse_config(text: str) -> RunConfig:
    """Parse a config document; unknown keys, duplicates and junk are fatal."""
    values: dict[str, float | int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"line {lineno}: expected 'key: value', got {raw!r}")
        if key not in _FIELD_ORDER:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            num = float(value)
        except ValueError:
            raise ConfigError(f"line {lineno}: {key}: not a number: {value!r}") from None
        if not math.isfinite(num):
            raise ConfigError(f"line {lineno}: {key}: value must be finite")
        if key in _INT_FIELDS:
            if not num.is_integer():
                raise ConfigError(f"line {lineno}: {key}: expected an integer")
            values[key] = int(num)
        else:
            values[key] = num
    return RunConfig(**values)


def _format_value(name: str, value: float | int) -> str:
    if name in _INT_FIELDS:
        return str(int(value))
    return repr(float(value))


def serialize_config(cfg: RunConfig) -> str:
    """Canonical text form: every key, fixed order, round-trips exactly."""
    lines = [
        f"{name}: {_format_value(name, getattr(cfg, name))}" for name in _FIELD_ORDER
    ]
    return "\n".join(lines) + "\n"


def scene_from_config(cfg: RunConfig) -> Scene:
    """Build the Scene, converting lab units (nm, mm, Hz) to cm and rad/s."""
    try:
        medium = MediumParams(
            wavelength=cfg.wavelength_nm * 1e-7,
            density=cfg.density_cm3,
            gamma_r=TWO_PI * cfg.gamma_r_hz,
            gamma=TWO_PI * cfg.gamma_hz,
            gamma_cb=TWO_PI * cfg.gamma_cb_hz,
            cell_length=cfg.cell_length_mm * 0.1,
        )
        control = ControlField(
            omega_peak=TWO_PI * cfg.control_rabi_hz,
            waist=cfg.control_waist_mm * 0.1,
            center=cfg.control_center_mm * 0.1,
        )
        probe = ProbeSpec(
            waist=cfg.probe_waist_mm * 0.1, offset=cfg.probe_offset_mm * 0.1
        )
        grid = centered_grid(cfg.grid_points, cfg.grid_span_mm * 0.1)
        return Scene(
            medium=medium,
            control=control,
            probe=probe,
            detector_distance=cfg.detector_distance_mm * 0.1,
            grid=grid,
            n_slices=cfg.n_slices,
            ray_steps=cfg.ray_steps,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def sweep_bounds(cfg: RunConfig) -> tuple[float, float, int]:
    """Sweep range in rad/s plus point count, validated."""
    if cfg.sweep_points < 2:
        raise ConfigError("sweep_points must be at least 2")
    if not cfg.sweep_max_hz > cfg.sweep_min_hz:
        raise ConfigError("sweep_max_hz must exceed sweep_min_hz")
    return TWO_PI * cfg.sweep_min_hz, TWO_PI * cfg.sweep_max_hz, cfg.sweep_points
