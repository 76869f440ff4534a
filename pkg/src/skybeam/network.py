"""Base-station sites, sectors, beam state and received-power measurement.

A "measurement assumption" says which beam the sector uses when its power
toward the UAV is evaluated:

  aligned  fresh beam steered straight at the UAV (clamped to scan limits);
           what the UAV would get right after a handover to that sector
  current  whatever the sector's BeamState holds right now (possibly stale)
  static   the fixed boresight beam; the sector never steers

Handover logic measures candidates as `aligned` and the serving cell as
`current`, so a stale serving beam loses to a neighbor that would serve
with a fresh one.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field

import numpy as np

from . import antenna, channel, terrain
from .antenna import ArraySpec, SectorOrientation, SteeringAngles
from .channel import RadioConfig
from .errors import InvalidPositionError, ParseError
from .terrain import DirectionAngles, Position, TerrainGrid

DEFAULT_ANTENNA_HEIGHT_M = 25.0
DEFAULT_DOWNTILT_DEG = 7.0
DEFAULT_SCAN_LIMIT_AZ_DEG = 60.0
DEFAULT_SCAN_LIMIT_EL_DEG = 45.0
SECTOR_AZIMUTHS_DEG = (0.0, 120.0, 240.0)

ASSUMPTIONS = ("aligned", "current", "static")

_HEX_RE = re.compile(r"^hex:(\d+):(\d+(?:\.\d+)?)$")
_GRID_RE = re.compile(r"^grid:(\d+)x(\d+):(\d+(?:\.\d+)?)$")

BORESIGHT = SteeringAngles(90.0, 0.0)


@dataclass
class BeamState:
    """Current pointing of one sector; mutable, owned by the running engine."""

    steer: SteeringAngles = field(default_factory=lambda: SteeringAngles(90.0, 0.0))
    last_update_t: float = 0.0
    mode: str = "tracking"  # "tracking" | "static"

    def __post_init__(self) -> None:
        if self.mode not in ("tracking", "static"):
            raise ValueError(f"beam mode must be tracking or static, got {self.mode!r}")


@dataclass(frozen=True)
class Site:
    id: int
    x: float
    y: float
    ground_override: float | None = None
    antenna_height_m: float | None = None


@dataclass
class Sector:
    id: int
    site_id: int
    position: Position
    orientation: SectorOrientation
    array: ArraySpec
    beam: BeamState = field(default_factory=BeamState)
    scan_limit_az_deg: float = DEFAULT_SCAN_LIMIT_AZ_DEG
    scan_limit_el_deg: float = DEFAULT_SCAN_LIMIT_EL_DEG


@dataclass
class Deployment:
    sites: list[Site]
    sectors: list[Sector]

    def __post_init__(self) -> None:
        site_ids = [s.id for s in self.sites]
        if len(set(site_ids)) != len(site_ids):
            raise ParseError("duplicate site id in deployment")
        sector_ids = [s.id for s in self.sectors]
        if len(set(sector_ids)) != len(sector_ids):
            raise ParseError("duplicate sector id in deployment")
        known = set(site_ids)
        for s in self.sectors:
            if s.site_id not in known:
                raise ParseError(f"sector {s.id} references unknown site {s.site_id}")
        self.sectors.sort(key=lambda s: s.id)

    def sector_by_id(self, sector_id: int) -> Sector:
        for s in self.sectors:
            if s.id == sector_id:
                return s
        raise KeyError(f"no sector with id {sector_id}")

    def reset_beams(self, mode: str) -> None:
        for s in self.sectors:
            s.beam = BeamState(SteeringAngles(90.0, 0.0), 0.0, mode)


@dataclass(frozen=True)
class MeasurementContext:
    """Everything needed to turn geometry into received power."""

    terrain: TerrainGrid
    radio: RadioConfig
    los_step_m: float = 5.0


def clamp_steering(theta_local_deg, phi_local_deg, az_limit_deg, el_limit_deg):
    """Clamp a desired local pointing to the scan cone around boresight.

    Accepts scalars or arrays; phi is interpreted as a signed offset.
    Returns (theta0, phi0_signed).
    """
    th = np.clip(
        np.asarray(theta_local_deg, dtype=np.float64), 90.0 - el_limit_deg, 90.0 + el_limit_deg
    )
    ph = np.clip(antenna.wrap_signed_deg(phi_local_deg), -az_limit_deg, az_limit_deg)
    return th, ph


def aligned_steering(sector: Sector, uav_pos: Position) -> SteeringAngles:
    """The fresh-beam pointing: straight at the UAV, clamped to scan limits."""
    direction = terrain.angles_to(sector.position, uav_pos)
    th_l, ph_l = antenna.to_local_many(sector.orientation, direction.theta_deg, direction.phi_deg)
    th0, ph0 = clamp_steering(th_l, ph_l, sector.scan_limit_az_deg, sector.scan_limit_el_deg)
    return SteeringAngles(float(th0), float(ph0) % 360.0)


def _resolve_steer(sector: Sector, uav_pos: Position, assumption: str) -> SteeringAngles:
    if assumption == "aligned":
        return aligned_steering(sector, uav_pos)
    if assumption == "current":
        return sector.beam.steer
    if assumption == "static":
        return BORESIGHT
    raise ValueError(f"assumption must be one of {ASSUMPTIONS}, got {assumption!r}")


def measure_cell(sector: Sector, uav_pos: Position, assumption: str, ctx: MeasurementContext) -> float:
    """Received power (dBm) at the UAV from one sector under an assumption."""
    dist = terrain.distance(sector.position, uav_pos)
    direction = terrain.angles_to(sector.position, uav_pos)
    th_l, ph_l = antenna.to_local_many(sector.orientation, direction.theta_deg, direction.phi_deg)
    steer = _resolve_steer(sector, uav_pos, assumption)
    gain = float(antenna.gain_db_many(sector.array, th_l, ph_l, steer.theta0_deg, steer.phi0_deg))
    los = terrain.line_of_sight(ctx.terrain, sector.position, uav_pos, ctx.los_step_m)
    pl = channel.pathloss_db(ctx.radio, dist, los)
    return ctx.radio.tx_power_dbm + gain + ctx.radio.uav_antenna_gain_dbi - pl


def best_server(deployment: Deployment, uav_pos: Position, assumption: str, ctx: MeasurementContext) -> int:
    """Sector id with the highest measured power; ties go to the lowest id."""
    if not deployment.sectors:
        raise ValueError("deployment has no sectors")
    best_id = None
    best_rx = -math.inf
    for sector in deployment.sectors:  # sorted by id, so strict > keeps the lowest on ties
        rx = measure_cell(sector, uav_pos, assumption, ctx)
        if rx > best_rx:
            best_rx = rx
            best_id = sector.id
    return int(best_id)


def rx_power_matrix(
    deployment: Deployment, positions: np.ndarray, assumption: str, ctx: MeasurementContext
) -> np.ndarray:
    """(n_sectors, n_positions) received power for a whole path at once.

    Rows follow deployment.sectors order (ascending id).  `current` uses each
    sector's BeamState as of the call.
    """
    out = np.empty((len(deployment.sectors), positions.shape[0]))
    for i, sector in enumerate(deployment.sectors):
        geo = sector_geometry(sector, positions, ctx)
        if assumption == "aligned":
            out[i] = geo.aligned_rx_dbm
        elif assumption == "static":
            out[i] = geo.static_rx_dbm
        elif assumption == "current":
            g = antenna.gain_db_many(
                sector.array,
                geo.theta_local_deg,
                geo.phi_local_deg,
                sector.beam.steer.theta0_deg,
                sector.beam.steer.phi0_deg,
            )
            out[i] = geo.rx_offset_dbm + g
        else:
            raise ValueError(f"assumption must be one of {ASSUMPTIONS}, got {assumption!r}")
    return out


@dataclass
class SectorGeometry:
    """Per-step geometry of one sector against a whole trajectory."""

    distance_m: np.ndarray
    theta_local_deg: np.ndarray
    phi_local_deg: np.ndarray  # signed offset from boresight
    los: np.ndarray
    aligned_steer_theta_deg: np.ndarray
    aligned_steer_phi_deg: np.ndarray
    rx_offset_dbm: np.ndarray  # tx + uav gain - pathloss; add a gain to get rx
    aligned_rx_dbm: np.ndarray
    static_rx_dbm: np.ndarray


def sector_geometry(sector: Sector, positions: np.ndarray, ctx: MeasurementContext) -> SectorGeometry:
    """Vectorized geometry/power precomputation for one sector.

    positions is (T, 3).  LOS is exact for flat terrain; otherwise each step
    runs the sampled terrain test.
    """
    p = sector.position
    d = positions - np.array([p.x, p.y, p.z])
    dist = np.sqrt(np.einsum("ij,ij->i", d, d))
    if np.any(dist < 1e-12):
        raise InvalidPositionError(f"UAV position coincides with sector {sector.id}")
    u = d / dist[:, None]
    th_l, ph_l = antenna.local_from_vectors(sector.orientation, u)
    st_th, st_ph = clamp_steering(th_l, ph_l, sector.scan_limit_az_deg, sector.scan_limit_el_deg)
    if ctx.terrain.is_flat:
        ground = ctx.terrain.heights[0, 0]
        los = np.full(len(dist), bool(p.z >= ground))
        if np.any(positions[:, 2] < ground - 1e-9):
            raise InvalidPositionError("UAV below flat terrain")
    else:
        los = np.array(
            [
                terrain.line_of_sight(
                    ctx.terrain, p, Position(*positions[i]), ctx.los_step_m
                )
                for i in range(positions.shape[0])
            ]
        )
    pl = channel.pathloss_db(ctx.radio, dist, los)
    offset = ctx.radio.tx_power_dbm + ctx.radio.uav_antenna_gain_dbi - pl
    aligned_gain = antenna.gain_db_many(sector.array, th_l, ph_l, st_th, st_ph)
    static_gain = antenna.gain_db_many(sector.array, th_l, ph_l, 90.0, 0.0)
    return SectorGeometry(
        distance_m=dist,
        theta_local_deg=th_l,
        phi_local_deg=ph_l,
        los=los,
        aligned_steer_theta_deg=st_th,
        aligned_steer_phi_deg=st_ph,
        rx_offset_dbm=offset,
        aligned_rx_dbm=offset + aligned_gain,
        static_rx_dbm=offset + static_gain,
    )


# --- deployment sources -------------------------------------------------------


def hex_site_count(rings: int) -> int:
    return 1 + 3 * rings * (rings + 1)


def _hex_positions(rings: int, isd_m: float) -> list[tuple[float, float]]:
    out = []
    for r in range(-rings, rings + 1):
        q_lo = max(-rings, -r - rings)
        q_hi = min(rings, -r + rings)
        for q in range(q_lo, q_hi + 1):
            out.append((isd_m * (q + r / 2.0), isd_m * (math.sqrt(3) / 2.0) * r))
    return out


def _grid_positions(nx: int, ny: int, spacing_m: float) -> list[tuple[float, float]]:
    out = []
    for iy in range(ny):
        for ix in range(nx):
            out.append(((ix - (nx - 1) / 2.0) * spacing_m, (iy - (ny - 1) / 2.0) * spacing_m))
    return out


def load_deployment(
    source: str,
    grid: TerrainGrid,
    *,
    antenna_height_m: float = DEFAULT_ANTENNA_HEIGHT_M,
    downtilt_deg: float = DEFAULT_DOWNTILT_DEG,
    default_array: ArraySpec | None = None,
    scan_limit_az_deg: float = DEFAULT_SCAN_LIMIT_AZ_DEG,
    scan_limit_el_deg: float = DEFAULT_SCAN_LIMIT_EL_DEG,
) -> Deployment:
    """Build a Deployment from "hex:<rings>:<isd_m>", "grid:<nx>x<ny>:<spacing_m>"
    or a JSON file path.  Sector height is site ground plus antenna height."""
    default_array = default_array or ArraySpec()
    m = _HEX_RE.match(source)
    if m:
        positions = _hex_positions(int(m.group(1)), float(m.group(2)))
        return _synthetic_deployment(
            positions, grid, antenna_height_m, downtilt_deg, default_array,
            scan_limit_az_deg, scan_limit_el_deg,
        )
    m = _GRID_RE.match(source)
    if m:
        positions = _grid_positions(int(m.group(1)), int(m.group(2)), float(m.group(3)))
        return _synthetic_deployment(
            positions, grid, antenna_height_m, downtilt_deg, default_array,
            scan_limit_az_deg, scan_limit_el_deg,
        )
    if source.startswith(("hex:", "grid:")):
        raise ParseError(f"bad synthetic deployment spec {source!r}")
    return _load_deployment_json(
        source, grid, antenna_height_m, downtilt_deg, default_array,
        scan_limit_az_deg, scan_limit_el_deg,
    )


def _sector_position(site: Site, grid: TerrainGrid, default_height: float) -> Position:
    ground = site.ground_override
    if ground is None:
        ground = terrain.elevation_at(grid, site.x, site.y)
    height = site.antenna_height_m if site.antenna_height_m is not None else default_height
    if height <= 0:
        raise InvalidPositionError(f"site {site.id}: antenna height must be > 0, got {height}")
    return Position(site.x, site.y, ground + height)


def _synthetic_deployment(
    positions, grid, antenna_height_m, downtilt_deg, array, az_lim, el_lim
) -> Deployment:
    sites = [Site(i + 1, x, y) for i, (x, y) in enumerate(positions)]
    sectors = []
    sid = 1
    for site in sites:
        pos = _sector_position(site, grid, antenna_height_m)
        for az in SECTOR_AZIMUTHS_DEG:
            sectors.append(
                Sector(
                    id=sid,
                    site_id=site.id,
                    position=pos,
                    orientation=SectorOrientation(az, downtilt_deg),
                    array=array,
                    scan_limit_az_deg=az_lim,
                    scan_limit_el_deg=el_lim,
                )
            )
            sid += 1
    return Deployment(sites=sites, sectors=sectors)


def _req(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(f"{where}: missing required field {key!r}")
    return obj[key]


def _load_deployment_json(
    path, grid, antenna_height_m, downtilt_deg, default_array, az_lim, el_lim
) -> Deployment:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read deployment file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    file_height = data.get("antenna_height_m", antenna_height_m)
    sites = []
    for i, raw in enumerate(_req(data, "sites", path)):
        where = f"{path}: sites[{i}]"
        try:
            sites.append(
                Site(
                    id=int(_req(raw, "id", where)),
                    x=float(_req(raw, "x", where)),
                    y=float(_req(raw, "y", where)),
                    ground_override=(
                        float(raw["ground_override"]) if raw.get("ground_override") is not None else None
                    ),
                    antenna_height_m=(
                        float(raw["antenna_height_m"]) if raw.get("antenna_height_m") is not None else None
                    ),
                )
            )
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{where}: {exc}") from exc
    site_map = {s.id: s for s in sites}
    sectors = []
    for i, raw in enumerate(_req(data, "sectors", path)):
        where = f"{path}: sectors[{i}]"
        try:
            site_id = int(_req(raw, "site", where))
            if site_id not in site_map:
                raise ParseError(f"{where}: unknown site {site_id}")
            arr = default_array
            if raw.get("array") is not None:
                a = raw["array"]
                arr = ArraySpec(
                    m_vertical=int(_req(a, "m", f"{where}.array")),
                    n_horizontal=int(_req(a, "n", f"{where}.array")),
                    dz_wavelengths=float(a.get("dz", default_array.dz_wavelengths)),
                    dy_wavelengths=float(a.get("dy", default_array.dy_wavelengths)),
                    element=default_array.element,
                )
            site = site_map[site_id]
            sectors.append(
                Sector(
                    id=int(_req(raw, "id", where)),
                    site_id=site_id,
                    position=_sector_position(site, grid, file_height),
                    orientation=SectorOrientation(
                        float(_req(raw, "azimuth_deg", where)),
                        float(raw.get("downtilt_deg", downtilt_deg)),
                    ),
                    array=arr,
                    scan_limit_az_deg=az_lim,
                    scan_limit_el_deg=el_lim,
                )
            )
        except ParseError:
            raise
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{where}: {exc}") from exc
    try:
        return Deployment(sites=sites, sectors=sectors)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def write_deployment_json(deployment: Deployment, path: str) -> None:
    """Serialize sites/sectors to the JSON layout load_deployment reads."""
    data = {
        "sites": [
            {
                "id": s.id,
                "x": s.x,
                "y": s.y,
                **({"ground_override": s.ground_override} if s.ground_override is not None else {}),
                **({"antenna_height_m": s.antenna_height_m} if s.antenna_height_m is not None else {}),
            }
            for s in deployment.sites
        ],
        "sectors": [
            {
                "id": sec.id,
                "site": sec.site_id,
                "azimuth_deg": sec.orientation.boresight_azimuth_deg,
                "downtilt_deg": sec.orientation.downtilt_deg,
                "array": {
                    "m": sec.array.m_vertical,
                    "n": sec.array.n_horizontal,
                    "dz": sec.array.dz_wavelengths,
                    "dy": sec.array.dy_wavelengths,
                },
            }
            for sec in deployment.sectors
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
