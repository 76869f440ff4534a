"""Command-line front end.

Subcommands: run, sweep, pattern, gen-trajectories, gen-deployment.
Usage errors exit 2 (argparse); domain errors print to stderr and exit 1.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

from . import engine, mobility, network
from .antenna import (
    ArraySpec,
    SteeringAngles,
    gain_db_many,
    half_power_beamwidth_deg,
    parse_topology,
    pattern_cut,
)
from .errors import ParseError, SkybeamError
from .terrain import load_terrain

_AXIS_CHOICES = ("topology", "update-period", "altitude")


def _config_epilog() -> str:
    """Every config key with its default, generated from the live defaults."""
    defaults = engine.ScenarioConfig().to_dict()
    notes = {
        "array": "null (deployment arrays, 8x8 default)",
        "trajectories.area": "null (terrain bounds)",
        "trajectories.file": "null (generate from seed)",
    }
    lines = ["configuration keys (JSON object passed via --config) and defaults:"]
    for key, value in defaults.items():
        if isinstance(value, dict):
            for sub, sv in value.items():
                lines.append(f"  {key + '.' + sub:<34} {notes.get(f'{key}.{sub}', sv)}")
        else:
            lines.append(f"  {key:<34} {notes.get(key, value)}")
    return "\n".join(lines)


def _topology_arg(text: str) -> tuple[int, int]:
    try:
        return parse_topology(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _area_arg(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            f"area must be x_min,y_min,x_max,y_max, got {text!r}"
        )
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skybeam",
        description="System-level simulator for beam-steered mmWave cells serving UAVs.",
        epilog=_config_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario and write a report")
    p_run.add_argument("--config", help="JSON scenario config (defaults apply if omitted)")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--seed", type=int, help="override the config seed")
    p_run.add_argument("--workers", type=int, help="override the worker count")
    p_run.add_argument("--plots", action="store_true", help="also write SVG plots")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run one scenario per axis value")
    p_sweep.add_argument("--config", help="JSON scenario config (defaults apply if omitted)")
    p_sweep.add_argument("--axis", required=True, choices=_AXIS_CHOICES)
    p_sweep.add_argument(
        "--values", required=True,
        help="comma-separated axis values, e.g. 1x64,8x8,16x4,64x1 or 0.1,0.2,0.5",
    )
    p_sweep.add_argument("--out", required=True, help="output directory")
    p_sweep.add_argument("--seed", type=int, help="override the config seed")
    p_sweep.add_argument("--workers", type=int, help="override the worker count")
    p_sweep.add_argument("--plots", action="store_true", help="also write SVG plots")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_pat = sub.add_parser("pattern", help="emit pattern cuts for an array topology")
    p_pat.add_argument("--topology", required=True, type=_topology_arg, metavar="MxN")
    p_pat.add_argument("--steer-theta", type=float, default=90.0,
                       help="steering zenith angle, deg (default 90 = horizon)")
    p_pat.add_argument("--steer-phi", type=float, default=0.0,
                       help="steering azimuth relative to boresight, deg (default 0)")
    p_pat.add_argument("--plane", choices=("azimuth", "elevation", "both"), default="both")
    p_pat.add_argument("--resolution", type=float, default=0.1, help="cut resolution, deg")
    p_pat.add_argument("--out", default=".", help="output directory (default .)")
    p_pat.set_defaults(func=_cmd_pattern)

    p_gt = sub.add_parser("gen-trajectories", help="generate a seeded trajectory CSV")
    p_gt.add_argument("--seed", type=int, default=1)
    p_gt.add_argument("--count", type=int, default=200)
    p_gt.add_argument("--terrain", default="flat:0", help="flat:<h> or a terrain CSV path")
    p_gt.add_argument("--area", type=_area_arg, default=(-2000.0, -2000.0, 2000.0, 2000.0),
                      metavar="X0,Y0,X1,Y1")
    p_gt.add_argument("--speed", type=float, default=14.0, help="ground speed, m/s")
    p_gt.add_argument("--duration", type=float, default=120.0, help="flight duration, s")
    p_gt.add_argument("--altitude", type=float, default=40.0, help="altitude AGL, m")
    p_gt.add_argument("--altitude-mode", choices=("constant", "terrain_following"),
                      default="constant")
    p_gt.add_argument("--out", required=True, help="output CSV path")
    p_gt.set_defaults(func=_cmd_gen_trajectories)

    p_gd = sub.add_parser("gen-deployment", help="generate a deployment JSON")
    p_gd.add_argument("--layout", default="hex:2:500",
                      help="hex:<rings>:<isd> or grid:<nx>x<ny>:<spacing> (default hex:2:500)")
    p_gd.add_argument("--terrain", default="flat:0", help="flat:<h> or a terrain CSV path")
    p_gd.add_argument("--area", type=_area_arg, default=None, metavar="X0,Y0,X1,Y1",
                      help="area for flat terrain (default -2000,-2000,2000,2000)")
    p_gd.add_argument("--antenna-height", type=float, default=network.DEFAULT_ANTENNA_HEIGHT_M)
    p_gd.add_argument("--downtilt", type=float, default=network.DEFAULT_DOWNTILT_DEG)
    p_gd.add_argument("--out", required=True, help="output JSON path")
    p_gd.set_defaults(func=_cmd_gen_deployment)
    return parser


def _load_scenario(args) -> engine.ScenarioConfig:
    cfg = engine.load_config(args.config) if args.config else engine.ScenarioConfig()
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    if getattr(args, "workers", None) is not None:
        cfg = replace(cfg, workers=args.workers)
    return cfg


def _cmd_run(args) -> int:
    cfg = _load_scenario(args)
    report = engine.run(cfg)
    engine.write_report(report, args.out, plots=args.plots)
    s = report.summary
    print(f"run {report.fingerprint} ({report.backend} kernel, seed {cfg.seed})")
    for note in report.notes:
        print(f"note: {note}")
    print(
        f"  {s['trajectory_count']} trajectories, {s['total_handovers']} handovers, "
        f"{s['total_ping_pongs']} ping-pongs"
    )
    print(
        f"  median outage cost {s['median_outage_cost']:.4f}, "
        f"median handovers/min {s['median_handovers_per_min']:.3f}, "
        f"mean SNR {s['mean_snr_db']:.2f} dB"
    )
    print(f"report written to {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = _load_scenario(args)
    axis = args.axis.replace("-", "_")
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    reports = engine.sweep(cfg, axis, values, out_dir=args.out, plots=args.plots)
    print(f"sweep over {args.axis}: {len(reports)} runs (seed {cfg.seed})")
    for value, rep in zip(values, reports):
        s = rep.summary
        print(
            f"  {args.axis}={value}: median outage {s['median_outage_cost']:.4f}, "
            f"median handovers/min {s['median_handovers_per_min']:.3f}"
        )
    print(f"reports written to {args.out}")
    return 0


def _write_cut_csv(points, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("angle_deg,gain_db\n")
        for angle, gain in points:
            fh.write(f"{angle},{gain}\n")


def _cmd_pattern(args) -> int:
    import os

    from . import plots

    m, n = args.topology
    spec = ArraySpec(m_vertical=m, n_horizontal=n)
    steer = SteeringAngles(args.steer_theta, args.steer_phi)
    peak = float(
        gain_db_many(spec, steer.theta0_deg, steer.phi0_deg, steer.theta0_deg, steer.phi0_deg)
    )
    print(f"topology {m}x{n}: peak gain {peak:.1f} dBi")
    planes = ("azimuth", "elevation") if args.plane == "both" else (args.plane,)
    os.makedirs(args.out, exist_ok=True)
    label = f"{m}x{n}"
    for plane in planes:
        cut = pattern_cut(spec, steer, plane, resolution_deg=args.resolution)
        csv_path = os.path.join(args.out, f"pattern_{plane}.csv")
        _write_cut_csv(cut, csv_path)
        hpbw = half_power_beamwidth_deg(spec, steer, plane)
        print(f"  {plane} HPBW {hpbw:.2f} deg ({csv_path})")
        plots.save_pattern_cut_svg(
            {label: cut}, plane, os.path.join(args.out, f"pattern_{plane}.svg")
        )
    return 0


def _cmd_gen_trajectories(args) -> int:
    grid = load_terrain(args.terrain, args.area)
    trajs = mobility.generate_trajectories(
        seed=args.seed,
        count=args.count,
        area=args.area,
        grid=grid,
        altitude_agl_m=args.altitude,
        speed_mps=args.speed,
        duration_s=args.duration,
        altitude_mode=args.altitude_mode,
    )
    mobility.write_trajectories_csv(trajs, args.out)
    print(f"wrote {len(trajs)} trajectories to {args.out}")
    return 0


def _cmd_gen_deployment(args) -> int:
    grid = load_terrain(args.terrain, args.area)
    deployment = network.load_deployment(
        args.layout,
        grid,
        antenna_height_m=args.antenna_height,
        downtilt_deg=args.downtilt,
    )
    network.write_deployment_json(deployment, args.out)
    print(
        f"wrote {len(deployment.sites)} sites / {len(deployment.sectors)} sectors to {args.out}"
    )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except SkybeamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
