"""Command-line front end.

Four subcommands, all driven by the same config file (see config.py;
every key is optional and defaults to the stock experiment):

    chi      susceptibility and refractive index versus probe detuning,
             evaluated at the probe's transverse position
    sweep    full detuning sweep (ray + wave measurements per row) plus a
             one-line summary CSV with the dispersion slope and resolution
    profile  far-field intensity profiles at chosen detunings
    trace    one ray trajectory through the cell

CSV goes to --out (stdout if omitted; sweep requires --out because it
writes a second summary file next to it).  Floats are printed with 9
significant digits; line endings are LF.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

import numpy as np

from .config import (
    ConfigError,
    RunConfig,
    parse_config,
    scene_from_config,
    sweep_bounds,
)
from .experiment import (
    GLASS_DISPERSION_PER_NM,
    TWO_PI,
    Scene,
    angular_dispersion,
    detuning_sweep,
    spectral_resolution,
)
from .medium import complex_chi, rabi_at, refractive_index
from .rays import trace_ray
from .waves import GuardBandError, ZeroPowerError, make_gaussian_probe, propagate_free, propagate_medium


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    return parse_config(text)


def _sweep_range(cfg: RunConfig, args: argparse.Namespace) -> tuple[float, float, int]:
    lo_hz, hi_hz, n = sweep_bounds(cfg)
    lo_hz /= TWO_PI
    hi_hz /= TWO_PI
    if args.min_hz is not None:
        lo_hz = args.min_hz
    if args.max_hz is not None:
        hi_hz = args.max_hz
    if args.points is not None:
        n = args.points
    if n < 2:
        raise ConfigError("need at least 2 points")
    if not hi_hz > lo_hz:
        raise ConfigError("max-hz must exceed min-hz")
    return lo_hz, hi_hz, n


def cmd_chi(cfg: RunConfig, scene: Scene, args: argparse.Namespace) -> None:
    lo_hz, hi_hz, n = _sweep_range(cfg, args)
    d_hz = np.linspace(lo_hz, hi_hz, n)
    omega = rabi_at(scene.probe.offset, scene.control)
    chi = complex_chi(TWO_PI * d_hz, omega, scene.medium)
    index = refractive_index(chi)
    lines = ["detuning_hz,re_chi,im_chi,re_n_minus_1,im_n"]
    for i in range(n):
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    d_hz[i],
                    chi[i].real,
                    chi[i].imag,
                    index[i].real - 1.0,
                    index[i].imag,
                )
            )
        )
    _emit(lines, args.out)


def cmd_sweep(cfg: RunConfig, scene: Scene, args: argparse.Namespace) -> None:
    lo_hz, hi_hz, n = _sweep_range(cfg, args)
    rows = detuning_sweep(scene, TWO_PI * lo_hz, TWO_PI * hi_hz, n, threads=args.threads)
    lines = [
        "detuning_hz,theta_ray_rad,theta_wave_rad,transmission,"
        "far_centroid_mm,far_width_mm,flags"
    ]
    for r in rows:
        values = (
            r.detuning / TWO_PI,
            r.theta_ray,
            r.theta_wave,
            r.transmission,
            r.far_centroid * 10.0,
            r.far_width * 10.0,
        )
        lines.append(",".join(_fmt(v) for v in values) + "," + ";".join(r.flags))
    _emit(lines, args.out)

    slope, noisy = angular_dispersion(scene)
    resolution = spectral_resolution(scene)
    flags = "dispersion_noise" if noisy else ""
    summary = [
        "d_theta_d_lambda_per_nm,glass_reference_per_nm,glass_ratio,resolution,flags",
        ",".join(
            _fmt(v)
            for v in (
                slope,
                GLASS_DISPERSION_PER_NM,
                abs(slope) / GLASS_DISPERSION_PER_NM,
                resolution,
            )
        )
        + ","
        + flags,
    ]
    out = Path(args.out)
    _emit(summary, str(out.with_name(out.stem + ".summary.csv")))


def cmd_profile(cfg: RunConfig, scene: Scene, args: argparse.Namespace) -> None:
    detunings_hz = args.detuning_hz if args.detuning_hz else [0.0]
    probe = make_gaussian_probe(
        scene.grid, scene.medium.wavelength, scene.probe.waist, scene.probe.offset
    )
    columns = [np.abs(probe.amplitude) ** 2]
    header = ["x_mm", "input_plane"]
    for d_hz in detunings_hz:
        out_field = propagate_medium(
            probe, TWO_PI * d_hz, scene.medium, scene.control, scene.n_slices
        )
        far = propagate_free(out_field, scene.detector_distance)
        columns.append(np.abs(far.amplitude) ** 2)
        header.append(f"far_{_fmt(d_hz)}")
    if not args.no_normalize:
        columns = [c / c.max() if c.max() > 0.0 else c for c in columns]
    xs_mm = scene.grid.xs() * 10.0
    lines = [",".join(header)]
    for i in range(scene.grid.n_points):
        lines.append(_fmt(xs_mm[i]) + "," + ",".join(_fmt(c[i]) for c in columns))
    _emit(lines, args.out)


def cmd_trace(cfg: RunConfig, scene: Scene, args: argparse.Namespace) -> None:
    d_hz = args.detuning_hz[-1] if args.detuning_hz else 0.0
    traj = trace_ray(
        TWO_PI * d_hz,
        scene.probe.offset,
        0.0,
        scene.medium,
        scene.control,
        scene.ray_steps,
    )
    lines = ["z_cm,x_mm,angle_rad"]
    if traj.paraxial_violation:
        lines.append("# warning: ray left the small-angle regime (|angle| >= 0.5)")
    for s in traj.states:
        lines.append(",".join(_fmt(v) for v in (s.z, s.x * 10.0, s.angle)))
    _emit(lines, args.out)


# argparse only recognizes plain decimals as negative positionals, so
# "--min-hz -1e4" would be parsed as an unknown option.  Widen the matcher
# to scientific notation.
_NEGATIVE_NUMBER = re.compile(r"^-\d+\.?\d*([eE][-+]?\d+)?$|^-\.\d+([eE][-+]?\d+)?$")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _NEGATIVE_NUMBER


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="eitprism",
        description="Beam deflection spectroscopy in a coherently driven vapor cell.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser, out_required: bool = False) -> None:
        p.add_argument("--config", help="run configuration file")
        p.add_argument(
            "--out",
            required=out_required,
            help="output CSV path" + ("" if out_required else " (default stdout)"),
        )

    p_chi = sub.add_parser("chi", help="susceptibility vs detuning")
    common(p_chi)
    p_sweep = sub.add_parser("sweep", help="detuning sweep with summary")
    common(p_sweep, out_required=True)
    p_sweep.add_argument("--threads", type=int, help="worker threads (default: all cores)")
    for p in (p_chi, p_sweep):
        p.add_argument("--min-hz", type=float, help="sweep start, Hz")
        p.add_argument("--max-hz", type=float, help="sweep end, Hz")
        p.add_argument("--points", type=int, help="number of sweep points")

    p_profile = sub.add_parser("profile", help="far-field intensity profiles")
    common(p_profile)
    p_profile.add_argument(
        "--no-normalize",
        action="store_true",
        help="emit raw intensities instead of peak-normalized profiles",
    )
    p_trace = sub.add_parser("trace", help="single ray trajectory")
    common(p_trace)
    for p in (p_profile, p_trace):
        p.add_argument(
            "--detuning-hz",
            type=float,
            action="append",
            help="two-photon detuning in Hz (repeatable for profile)",
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args.config)
        scene = scene_from_config(cfg)
        handler = {
            "chi": cmd_chi,
            "sweep": cmd_sweep,
            "profile": cmd_profile,
            "trace": cmd_trace,
        }[args.command]
        handler(cfg, scene, args)
    except ValueError as exc:  # includes ConfigError
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GuardBandError, ZeroPowerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0
