"""Scenario configuration and the time-stepped simulation engine.

Each trajectory is independent: per step the engine moves the UAV, applies
the serving sector's periodic beam update, records a link sample, evaluates
the A3 condition and executes at most one handover.  Per-sector geometry
and fresh-beam received power are precomputed for the whole trajectory (they
do not depend on simulation state), so the sequential walk only has to
evaluate the serving cell's stale-beam gain.

Determinism: trajectories are seeded, the step order is fixed, and results
are aggregated in trajectory order, so two runs with the same config produce
byte-identical CSVs and a parallel run matches a serial one exactly.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import kernels, metrics, mobility, network
from .antenna import (
    ArraySpec,
    ElementPattern,
    SteeringAngles,
    angular_separation_deg,
    gain_db_many,
    parse_topology,
)
from .channel import LinkSample, RadioConfig, noise_power_dbm
from .errors import ConfigError, SweepError
from .handover import A3Config, ConnectionState, HandoverEvent, a3_decide
from .metrics import TrajectoryMetrics
from .mobility import Trajectory
from .network import Deployment, MeasurementContext
from .terrain import TerrainGrid, load_terrain

_TIME_TOL = 1e-9

SWEEP_AXES = ("topology", "update_period", "altitude")


@dataclass(frozen=True)
class TrajectoryParams:
    count: int = 200
    altitude_agl_m: float = 40.0
    speed_mps: float = 14.0
    duration_s: float = 120.0
    area: tuple[float, float, float, float] | None = None  # defaults to the terrain bounds
    altitude_mode: str = "constant"
    file: str | None = None  # replay a CSV set instead of generating

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ConfigError(f"trajectories.count must be >= 1, got {self.count}")
        if self.altitude_mode not in ("constant", "terrain_following"):
            raise ConfigError(
                f"trajectories.altitude_mode must be constant or terrain_following, "
                f"got {self.altitude_mode!r}"
            )


@dataclass(frozen=True)
class ScenarioConfig:
    seed: int = 1
    terrain: str = "flat:0"
    deployment: str = "hex:2:500"
    radio: RadioConfig = field(default_factory=RadioConfig)
    array: ArraySpec | None = None  # None: deployment file arrays (or the 8x8 default)
    a3: A3Config = field(default_factory=A3Config)
    trajectories: TrajectoryParams = field(default_factory=TrajectoryParams)
    beam_mode: str = "tracking"  # "tracking" | "static"
    update_period_s: float = 0.1
    time_step_s: float = 0.1
    outage_threshold_db: float = -6.0
    antenna_height_m: float = 25.0
    downtilt_deg: float = 7.0
    scan_limit_az_deg: float = 60.0
    scan_limit_el_deg: float = 45.0
    los_step_m: float = 5.0
    neighbor_assumption: str = "aligned"
    ping_pong_window_s: float = 1.0
    workers: int = 1
    keep_samples: bool = False

    def __post_init__(self) -> None:
        if self.beam_mode not in ("tracking", "static"):
            raise ConfigError(f"beam_mode must be tracking or static, got {self.beam_mode!r}")
        if not self.time_step_s > 0:
            raise ConfigError(f"time_step_s must be > 0, got {self.time_step_s}")
        if self.update_period_s < self.time_step_s - _TIME_TOL:
            raise ConfigError(
                f"update_period_s ({self.update_period_s}) must be >= "
                f"time_step_s ({self.time_step_s})"
            )
        if self.neighbor_assumption not in network.ASSUMPTIONS:
            raise ConfigError(
                f"neighbor_assumption must be one of {network.ASSUMPTIONS}, "
                f"got {self.neighbor_assumption!r}"
            )
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")

    def to_dict(self) -> dict:
        """Plain-dict form using the same schema config_from_dict accepts."""
        array = None
        if self.array is not None:
            array = {
                "m": self.array.m_vertical,
                "n": self.array.n_horizontal,
                "dz_wavelengths": self.array.dz_wavelengths,
                "dy_wavelengths": self.array.dy_wavelengths,
                "element": asdict(self.array.element),
            }
            if self.array.amps_vertical is not None:
                array["amps_vertical"] = list(self.array.amps_vertical)
            if self.array.amps_horizontal is not None:
                array["amps_horizontal"] = list(self.array.amps_horizontal)
        tp = asdict(self.trajectories)
        if tp["area"] is not None:
            tp["area"] = list(tp["area"])
        return {
            "seed": self.seed,
            "terrain": self.terrain,
            "deployment": self.deployment,
            "radio": asdict(self.radio),
            "array": array,
            "a3": asdict(self.a3),
            "trajectories": tp,
            "beam_mode": self.beam_mode,
            "update_period_s": self.update_period_s,
            "time_step_s": self.time_step_s,
            "outage_threshold_db": self.outage_threshold_db,
            "antenna_height_m": self.antenna_height_m,
            "downtilt_deg": self.downtilt_deg,
            "scan_limit_az_deg": self.scan_limit_az_deg,
            "scan_limit_el_deg": self.scan_limit_el_deg,
            "los_step_m": self.los_step_m,
            "neighbor_assumption": self.neighbor_assumption,
            "ping_pong_window_s": self.ping_pong_window_s,
            "workers": self.workers,
            "keep_samples": self.keep_samples,
        }

    def fingerprint(self) -> str:
        # workers and keep_samples change how the run executes, not what it
        # computes, so they stay out of the scenario identity
        ident = self.to_dict()
        del ident["workers"], ident["keep_samples"]
        canonical = json.dumps(ident, sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]


# --- config parsing ----------------------------------------------------------

_RADIO_KEYS = {
    "carrier_hz", "bandwidth_hz", "tx_power_dbm", "noise_density_dbm_hz",
    "noise_figure_db", "uav_antenna_gain_dbi", "nlos_penalty_db",
}
_A3_KEYS = {"threshold_db", "time_to_trigger_s", "hysteresis_db"}
_ELEMENT_KEYS = {"max_gain_dbi", "hpbw_deg", "side_lobe_floor_db", "front_back_db"}
_ARRAY_KEYS = {
    "m", "n", "dz_wavelengths", "dy_wavelengths", "element",
    "amps_vertical", "amps_horizontal",
}
_TRAJ_KEYS = {"count", "altitude_agl_m", "speed_mps", "duration_s", "area", "altitude_mode", "file"}
_TOP_KEYS = {
    "seed", "terrain", "deployment", "radio", "array", "a3", "trajectories",
    "beam_mode", "update_period_s", "time_step_s", "outage_threshold_db",
    "antenna_height_m", "downtilt_deg", "scan_limit_az_deg", "scan_limit_el_deg",
    "los_step_m", "neighbor_assumption", "ping_pong_window_s", "workers", "keep_samples",
}


def _check_keys(data: dict, allowed: set, where: str) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown config key {where}{sorted(unknown)[0]!r}")


def _sub(data: dict, key: str, allowed: set) -> dict:
    sub = data.get(key) or {}
    if not isinstance(sub, dict):
        raise ConfigError(f"config key {key!r} must be an object")
    _check_keys(sub, allowed, f"{key}.")
    return sub


def _parse_array(arr: dict) -> ArraySpec:
    element_raw = arr.get("element") or {}
    if not isinstance(element_raw, dict):
        raise ConfigError("config key 'array.element' must be an object")
    _check_keys(element_raw, _ELEMENT_KEYS, "array.element.")
    element = ElementPattern(**{k: float(v) for k, v in element_raw.items()})
    amps_v = arr.get("amps_vertical")
    amps_h = arr.get("amps_horizontal")
    return ArraySpec(
        m_vertical=int(arr.get("m", 8)),
        n_horizontal=int(arr.get("n", 8)),
        dz_wavelengths=float(arr.get("dz_wavelengths", 0.5)),
        dy_wavelengths=float(arr.get("dy_wavelengths", 0.5)),
        element=element,
        amps_vertical=None if amps_v is None else tuple(float(a) for a in amps_v),
        amps_horizontal=None if amps_h is None else tuple(float(a) for a in amps_h),
    )


def config_from_dict(data: dict) -> ScenarioConfig:
    """Build a validated ScenarioConfig from a plain dict (parsed JSON)."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    _check_keys(data, _TOP_KEYS, "")
    try:
        radio = RadioConfig(**_sub(data, "radio", _RADIO_KEYS))
        a3 = A3Config(**_sub(data, "a3", _A3_KEYS))
        array = None
        if data.get("array") is not None:
            array = _parse_array(_sub(data, "array", _ARRAY_KEYS))
        traj_raw = dict(_sub(data, "trajectories", _TRAJ_KEYS))
        if traj_raw.get("area") is not None:
            area = traj_raw["area"]
            if not (isinstance(area, (list, tuple)) and len(area) == 4):
                raise ConfigError("trajectories.area must be [x_min, y_min, x_max, y_max]")
            traj_raw["area"] = tuple(float(v) for v in area)
        trajectories = TrajectoryParams(**traj_raw)
        simple = {
            k: data[k]
            for k in _TOP_KEYS - {"radio", "a3", "array", "trajectories"}
            if k in data
        }
        return ScenarioConfig(
            radio=radio, a3=a3, array=array, trajectories=trajectories, **simple
        )
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config: {exc}") from exc


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    return config_from_dict(data)


# --- world assembly ------------------------------------------------------------


@dataclass
class World:
    config: ScenarioConfig
    terrain: TerrainGrid
    deployment: Deployment
    ctx: MeasurementContext
    area: tuple[float, float, float, float]
    noise_dbm: float


def build_world(config: ScenarioConfig) -> World:
    area = config.trajectories.area
    grid = load_terrain(config.terrain, area)
    if area is None:
        area = grid.bounds
    deployment = network.load_deployment(
        config.deployment,
        grid,
        antenna_height_m=config.antenna_height_m,
        downtilt_deg=config.downtilt_deg,
        default_array=config.array,
        scan_limit_az_deg=config.scan_limit_az_deg,
        scan_limit_el_deg=config.scan_limit_el_deg,
    )
    if config.array is not None:
        for sector in deployment.sectors:
            sector.array = config.array
    deployment.reset_beams(config.beam_mode)
    ctx = MeasurementContext(terrain=grid, radio=config.radio, los_step_m=config.los_step_m)
    return World(
        config=config,
        terrain=grid,
        deployment=deployment,
        ctx=ctx,
        area=area,
        noise_dbm=noise_power_dbm(config.radio),
    )


def _load_trajectories(config: ScenarioConfig, world: World) -> tuple[list[Trajectory], list[str]]:
    tp = config.trajectories
    notes: list[str] = []
    if tp.file:
        trajs = mobility.read_trajectories_csv(tp.file, world.terrain, tp.altitude_mode)
        notes.append(f"trajectories replayed from {tp.file}")
        return trajs, notes
    _, clipped = mobility.start_margin_m(world.area, tp.speed_mps, tp.duration_s)
    if clipped:
        notes.append(
            "area too small for the start margin; starts fall back to uniform "
            "with boundary truncation"
        )
    trajs = mobility.generate_trajectories(
        seed=config.seed,
        count=tp.count,
        area=world.area,
        grid=world.terrain,
        altitude_agl_m=tp.altitude_agl_m,
        speed_mps=tp.speed_mps,
        duration_s=tp.duration_s,
        altitude_mode=tp.altitude_mode,
    )
    return trajs, notes


# --- per-trajectory simulation ---------------------------------------------------


@dataclass
class TrajectoryResult:
    metrics: TrajectoryMetrics
    events: list[HandoverEvent]
    samples: list[LinkSample] | None
    degenerate: bool = False


def _degenerate_result(traj: Trajectory) -> TrajectoryResult:
    # the trajectory leaves the area before the first sample instant
    row = TrajectoryMetrics(
        trajectory_id=traj.id,
        outage_cost=0.0,
        handovers_per_min=0.0,
        ping_pongs=0,
        realized_duration_s=0.0,
        min_snr_db=0.0,
        mean_snr_db=0.0,
        max_snr_db=0.0,
    )
    return TrajectoryResult(metrics=row, events=[], samples=[], degenerate=True)


def simulate_trajectory(world: World, traj: Trajectory) -> TrajectoryResult:
    cfg = world.config
    dt = cfg.time_step_s
    static_mode = cfg.beam_mode == "static"
    per_step_neighbors = not static_mode and cfg.neighbor_assumption == "current"
    realized = mobility.truncated_duration(traj, world.area)
    n_steps = int(math.floor(realized / dt + _TIME_TOL))
    if n_steps < 1:
        return _degenerate_result(traj)
    realized = n_steps * dt
    ts = np.arange(n_steps + 1) * dt
    positions = mobility.positions_at(traj, ts, world.terrain)

    sectors = world.deployment.sectors
    geos = [network.sector_geometry(s, positions, world.ctx) for s in sectors]
    if static_mode or cfg.neighbor_assumption == "static":
        rx_candidates = np.stack([g.static_rx_dbm for g in geos])
    else:
        rx_candidates = np.stack([g.aligned_rx_dbm for g in geos])
    ids = [s.id for s in sectors]
    index_of = {sid: i for i, sid in enumerate(ids)}

    # strongest and runner-up candidate per step (rows are in ascending sector
    # id order, so argmax tie-breaks toward the lowest id)
    top = np.argmax(rx_candidates, axis=0)
    masked = rx_candidates.copy()
    masked[top, np.arange(rx_candidates.shape[1])] = -np.inf
    second = np.argmax(masked, axis=0)

    world.deployment.reset_beams(cfg.beam_mode)
    serving_idx = int(np.argmax(rx_candidates[:, 0]))
    state = ConnectionState(serving_sector_id=ids[serving_idx])
    if not static_mode:
        beam = sectors[serving_idx].beam
        beam.steer = _steer_at(geos[serving_idx], 0)
        beam.last_update_t = 0.0

    samples: list[LinkSample] = []
    events: list[HandoverEvent] = []
    for i in range(1, n_steps + 1):
        t = float(ts[i])
        geo = geos[serving_idx]
        sector = sectors[serving_idx]
        beam = sector.beam
        # periodic beam realignment happens before the sample is taken
        if not static_mode and t - beam.last_update_t >= cfg.update_period_s - _TIME_TOL:
            beam.steer = _steer_at(geo, i)
            beam.last_update_t = t
        if static_mode:
            rx = float(geo.static_rx_dbm[i])
        else:
            rx = float(geo.rx_offset_dbm[i]) + _gain_at(
                sector.array, geo, i, beam.steer.theta0_deg, beam.steer.phi0_deg
            )
        mis = angular_separation_deg(
            beam.steer.theta0_deg,
            beam.steer.phi0_deg,
            float(geo.theta_local_deg[i]),
            float(geo.phi_local_deg[i]),
        )
        samples.append(
            LinkSample(
                t=t,
                serving_sector_id=sector.id,
                snr_db=rx - world.noise_dbm,
                rx_power_dbm=rx,
                los=bool(geo.los[i]),
                misalignment_deg=float(mis),
            )
        )
        if len(sectors) == 1:
            continue  # nothing to hand over to
        if per_step_neighbors:
            best_idx, neigh = _best_current_neighbor(sectors, geos, serving_idx, i)
        else:
            best_idx = int(top[i]) if int(top[i]) != serving_idx else int(second[i])
            neigh = float(rx_candidates[best_idx, i])
        decision = a3_decide(state, rx, ids[best_idx], neigh, cfg.a3, t)
        if decision is not None:
            to_id, delta = decision
            to_idx = index_of[to_id]
            event = HandoverEvent(
                t=t, from_sector=sector.id, to_sector=to_id, trigger_rx_delta_db=delta
            )
            if not static_mode:
                target_beam = sectors[to_idx].beam
                target_beam.steer = _steer_at(geos[to_idx], i)
                target_beam.last_update_t = t
            state.serving_sector_id = to_id
            state.a3_pending_since = None
            state.handover_log.append(event)
            events.append(event)
            serving_idx = to_idx
    m = metrics.summarize_trajectory(
        trajectory_id=traj.id,
        samples=samples,
        log=events,
        realized_duration_s=realized,
        outage_threshold_db=cfg.outage_threshold_db,
        ping_pong_window_s=cfg.ping_pong_window_s,
    )
    return TrajectoryResult(
        metrics=m, events=events, samples=samples if cfg.keep_samples else None
    )


def _steer_at(geo: network.SectorGeometry, i: int) -> SteeringAngles:
    return SteeringAngles(
        float(geo.aligned_steer_theta_deg[i]), float(geo.aligned_steer_phi_deg[i])
    )


def _gain_at(
    array: ArraySpec, geo: network.SectorGeometry, i: int, steer_theta: float, steer_phi: float
) -> float:
    return float(
        gain_db_many(
            array,
            float(geo.theta_local_deg[i]),
            float(geo.phi_local_deg[i]),
            steer_theta,
            steer_phi,
        )
    )


def _best_current_neighbor(sectors, geos, serving_idx: int, i: int) -> tuple[int, float]:
    """Strongest non-serving sector measured with each sector's current beam.

    Slow path: one stale-beam evaluation per sector per step.  Only used for
    neighbor_assumption == "current", which is not the default.
    """
    best_idx = -1
    best_rx = -math.inf
    for idx, (s, g) in enumerate(zip(sectors, geos)):
        if idx == serving_idx:
            continue
        rx = float(g.rx_offset_dbm[i]) + _gain_at(
            s.array, g, i, s.beam.steer.theta0_deg, s.beam.steer.phi0_deg
        )
        if rx > best_rx:
            best_idx, best_rx = idx, rx
    return best_idx, best_rx


# --- run/report ------------------------------------------------------------------


@dataclass
class RunReport:
    config: ScenarioConfig
    fingerprint: str
    backend: str
    notes: list[str]
    trajectory_set: list[Trajectory]
    trajectories: list[TrajectoryMetrics]
    handovers: list[tuple[int, HandoverEvent]]
    ecdf_outage: list[tuple[float, float]]
    ecdf_handover_rate: list[tuple[float, float]]
    summary: dict
    samples: dict[int, list[LinkSample]] | None = None


_WORKER_WORLD: World | None = None


def _init_worker(config_dict: dict) -> None:
    global _WORKER_WORLD
    _WORKER_WORLD = build_world(config_from_dict(config_dict))


def _run_one(traj: Trajectory) -> TrajectoryResult:
    assert _WORKER_WORLD is not None
    return simulate_trajectory(_WORKER_WORLD, traj)


def run(config: ScenarioConfig) -> RunReport:
    """Simulate every trajectory and aggregate the metrics."""
    world = build_world(config)
    trajs, notes = _load_trajectories(config, world)
    if config.workers > 1:
        with ProcessPoolExecutor(
            max_workers=config.workers,
            initializer=_init_worker,
            initargs=(config.to_dict(),),
        ) as pool:
            results = list(pool.map(_run_one, trajs, chunksize=8))
    else:
        results = [simulate_trajectory(world, tr) for tr in trajs]

    degenerate = [tr.id for tr, r in zip(trajs, results) if r.degenerate]
    if degenerate:
        notes.append(
            f"{len(degenerate)} trajectory(ies) left the area before the first "
            f"sample and contribute zero rows: ids {degenerate}"
        )
    rows = [r.metrics for r in results]
    handovers = [(tr.id, ev) for tr, r in zip(trajs, results) for ev in r.events]
    outages = [r.outage_cost for r in rows]
    rates = [r.handovers_per_min for r in rows]
    summary = {
        "trajectory_count": len(rows),
        "total_handovers": len(handovers),
        "median_outage_cost": float(np.median(outages)),
        "mean_outage_cost": float(np.mean(outages)),
        "median_handovers_per_min": float(np.median(rates)),
        "mean_handovers_per_min": float(np.mean(rates)),
        "mean_snr_db": float(np.mean([r.mean_snr_db for r in rows])),
        "total_ping_pongs": int(sum(r.ping_pongs for r in rows)),
    }
    samples = None
    if config.keep_samples:
        samples = {tr.id: r.samples for tr, r in zip(trajs, results)}
    return RunReport(
        config=config,
        fingerprint=config.fingerprint(),
        backend=kernels.BACKEND,
        notes=notes,
        trajectory_set=trajs,
        trajectories=rows,
        handovers=handovers,
        ecdf_outage=metrics.ecdf(outages),
        ecdf_handover_rate=metrics.ecdf(rates),
        summary=summary,
        samples=samples,
    )


def write_report(report: RunReport, out_dir: str, plots: bool = False) -> None:
    """Write report.json plus the CSV tables (and optional SVG plots)."""
    os.makedirs(out_dir, exist_ok=True)
    payload = {
        "fingerprint": report.fingerprint,
        "seed": report.config.seed,
        "backend": report.backend,
        "beam_mode": report.config.beam_mode,
        "notes": report.notes,
        "summary": report.summary,
        "config": report.config.to_dict(),
    }
    with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    metrics.write_metrics_csv(report.trajectories, os.path.join(out_dir, "metrics.csv"))
    metrics.write_handovers_csv(report.handovers, os.path.join(out_dir, "handovers.csv"))
    metrics.write_ecdf_csv(report.ecdf_outage, os.path.join(out_dir, "ecdf_outage.csv"))
    metrics.write_ecdf_csv(
        report.ecdf_handover_rate, os.path.join(out_dir, "ecdf_handover_rate.csv")
    )
    mobility.write_trajectories_csv(
        report.trajectory_set, os.path.join(out_dir, "trajectories.csv")
    )
    if plots:
        from . import plots as _plots

        label = report.config.beam_mode
        _plots.save_ecdf_svg(
            {label: report.ecdf_outage},
            "outage cost",
            os.path.join(out_dir, "ecdf_outage.svg"),
        )
        _plots.save_ecdf_svg(
            {label: report.ecdf_handover_rate},
            "handovers per minute",
            os.path.join(out_dir, "ecdf_handover_rate.svg"),
        )


# --- sweep -------------------------------------------------------------------------


def apply_axis(config: ScenarioConfig, axis: str, value: str) -> ScenarioConfig:
    """A copy of config with one sweep axis applied; values arrive as text."""
    if axis == "topology":
        m, n = parse_topology(str(value))
        base = config.array if config.array is not None else ArraySpec()
        return replace(
            config,
            array=replace(
                base, m_vertical=m, n_horizontal=n,
                amps_vertical=None, amps_horizontal=None,
            ),
        )
    if axis == "update_period":
        return replace(config, update_period_s=float(value))
    if axis == "altitude":
        return replace(
            config, trajectories=replace(config.trajectories, altitude_agl_m=float(value))
        )
    raise ConfigError(f"unknown sweep axis {axis!r}; valid axes: {', '.join(SWEEP_AXES)}")


def sweep(
    config: ScenarioConfig,
    axis: str,
    values: list[str],
    out_dir: str | None = None,
    plots: bool = False,
) -> list[RunReport]:
    """One run per axis value, sharing the trajectory seed.

    With out_dir set, each run lands in <out_dir>/<axis>=<value>/ as it
    completes, so a failing value still leaves the finished runs and a
    partial comparison table on disk before SweepError propagates.
    """
    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis {axis!r}; valid axes: {', '.join(SWEEP_AXES)}")
    if not values:
        raise ConfigError("sweep needs at least one value")
    reports: list[RunReport] = []
    done: list[str] = []
    for value in values:
        try:
            cfg = apply_axis(config, axis, value)
            report = run(cfg)
        except SweepError:
            raise
        except Exception as exc:
            if out_dir:
                _write_comparison(out_dir, axis, done, reports)
            raise SweepError(f"sweep aborted at {axis}={value}: {exc}") from exc
        reports.append(report)
        done.append(str(value))
        if out_dir:
            write_report(report, os.path.join(out_dir, f"{axis}={value}"), plots=plots)
    if out_dir:
        _write_comparison(out_dir, axis, done, reports)
        if plots:
            from . import plots as _plots

            _plots.save_ecdf_svg(
                {v: r.ecdf_handover_rate for v, r in zip(done, reports)},
                "handovers per minute",
                os.path.join(out_dir, "ecdf_handover_rate.svg"),
            )
            _plots.save_ecdf_svg(
                {v: r.ecdf_outage for v, r in zip(done, reports)},
                "outage cost",
                os.path.join(out_dir, "ecdf_outage.svg"),
            )
    return reports


def _write_comparison(
    out_dir: str, axis: str, values: list[str], reports: list[RunReport]
) -> None:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "comparison.csv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            f"{axis},median_outage_cost,median_handovers_per_min,"
            "mean_outage_cost,mean_handovers_per_min,mean_snr_db\n"
        )
        for value, rep in zip(values, reports):
            s = rep.summary
            fh.write(
                f"{value},{s['median_outage_cost']},{s['median_handovers_per_min']},"
                f"{s['mean_outage_cost']},{s['mean_handovers_per_min']},{s['mean_snr_db']}\n"
            )
