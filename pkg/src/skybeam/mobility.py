"""Straight-line constant-speed UAV trajectories.

Generation is fully seeded: start points are uniform over the area interior
(kept speed*duration/2 away from the edges when the area is big enough) and
headings are uniform compass bearings.  Flight altitude is a constant
absolute height equal to ground-at-start plus the AGL offset; the optional
terrain-following mode re-evaluates ground under the UAV instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .terrain import Position, TerrainGrid, elevation_at

Area = tuple[float, float, float, float]

TRAJECTORY_CSV_HEADER = "id,start_x,start_y,heading_deg,speed,altitude_agl,duration"


@dataclass(frozen=True)
class Trajectory:
    id: int
    start: Position  # start.z already includes ground + AGL
    heading_deg: float
    speed_mps: float = 14.0
    altitude_agl_m: float = 40.0
    duration_s: float = 120.0
    seed: int = 0
    altitude_mode: str = "constant"  # "constant" | "terrain"

    def __post_init__(self) -> None:
        if not self.speed_mps > 0:
            raise ValueError(f"speed_mps must be > 0, got {self.speed_mps}")
        if not self.duration_s > 0:
            raise ValueError(f"duration_s must be > 0, got {self.duration_s}")
        if self.altitude_mode not in ("constant", "terrain"):
            raise ValueError(f"altitude_mode must be constant or terrain, got {self.altitude_mode!r}")
        object.__setattr__(self, "heading_deg", self.heading_deg % 360.0)

    @property
    def velocity(self) -> tuple[float, float]:
        h = math.radians(self.heading_deg)
        return (self.speed_mps * math.sin(h), self.speed_mps * math.cos(h))


@dataclass(frozen=True)
class UavState:
    t: float
    position: Position
    velocity: tuple[float, float, float]


def start_margin_m(area: Area, speed_mps: float, duration_s: float) -> tuple[float, bool]:
    """Edge margin for start points, and whether it had to be dropped.

    The preferred margin keeps half the path length away from every edge;
    when the area is too small for that the starts fall back to uniform over
    the whole area (clipped=True) and truncation handles boundary exits.
    """
    x0, y0, x1, y1 = area
    margin = speed_mps * duration_s / 2.0
    if 2.0 * margin >= (x1 - x0) or 2.0 * margin >= (y1 - y0):
        return 0.0, True
    return margin, False


def generate_trajectories(
    seed: int,
    count: int,
    area: Area,
    grid: TerrainGrid,
    altitude_agl_m: float = 40.0,
    speed_mps: float = 14.0,
    duration_s: float = 120.0,
    altitude_mode: str = "constant",
) -> list[Trajectory]:
    """Seeded batch of straight trajectories with uniform starts and headings."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    x0, y0, x1, y1 = area
    if not (x1 > x0 and y1 > y0):
        raise ValueError(f"area must have positive extent, got {area}")
    margin, _ = start_margin_m(area, speed_mps, duration_s)
    # tiny inset so a start never sits exactly on the boundary
    inset = max(margin, 1e-9 * max(x1 - x0, y1 - y0))
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        sx = float(rng.uniform(x0 + inset, x1 - inset))
        sy = float(rng.uniform(y0 + inset, y1 - inset))
        heading = float(rng.uniform(0.0, 360.0))
        z = elevation_at(grid, sx, sy) + altitude_agl_m
        out.append(
            Trajectory(
                id=i + 1,
                start=Position(sx, sy, z),
                heading_deg=heading,
                speed_mps=speed_mps,
                altitude_agl_m=altitude_agl_m,
                duration_s=duration_s,
                seed=seed,
                altitude_mode=altitude_mode,
            )
        )
    return out


def step(traj: Trajectory, t: float, grid: TerrainGrid | None = None) -> UavState:
    """UAV state at time t along the trajectory (0 <= t <= duration)."""
    if not 0.0 <= t <= traj.duration_s + 1e-9:
        raise ValueError(f"t={t} outside [0, {traj.duration_s}]")
    vx, vy = traj.velocity
    x = traj.start.x + vx * t
    y = traj.start.y + vy * t
    if traj.altitude_mode == "terrain":
        if grid is None:
            raise ValueError("terrain-following trajectory needs the terrain grid")
        z = elevation_at(grid, x, y) + traj.altitude_agl_m
    else:
        z = traj.start.z
    # velocity is the ground velocity; vertical rate is not modeled
    return UavState(t=t, position=Position(x, y, z), velocity=(vx, vy, 0.0))


def positions_at(traj: Trajectory, ts: np.ndarray, grid: TerrainGrid | None = None) -> np.ndarray:
    """(len(ts), 3) positions; same math as step(), vectorized."""
    vx, vy = traj.velocity
    xs = traj.start.x + vx * ts
    ys = traj.start.y + vy * ts
    if traj.altitude_mode == "terrain":
        if grid is None:
            raise ValueError("terrain-following trajectory needs the terrain grid")
        from .terrain import elevation_many

        zs = elevation_many(grid, xs, ys) + traj.altitude_agl_m
    else:
        zs = np.full(len(ts), traj.start.z)
    return np.stack([xs, ys, zs], axis=1)


def truncated_duration(traj: Trajectory, area: Area) -> float:
    """Flight time until the trajectory leaves the area, capped at duration."""
    x0, y0, x1, y1 = area
    vx, vy = traj.velocity
    t_exit = traj.duration_s

    def axis_exit(pos: float, vel: float, lo: float, hi: float) -> float:
        if vel > 1e-12:
            return (hi - pos) / vel
        if vel < -1e-12:
            return (lo - pos) / vel
        return math.inf

    t_exit = min(t_exit, axis_exit(traj.start.x, vx, x0, x1), axis_exit(traj.start.y, vy, y0, y1))
    return max(0.0, t_exit)


def write_trajectories_csv(trajectories: list[Trajectory], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(TRAJECTORY_CSV_HEADER + "\n")
        for tr in trajectories:
            fh.write(
                f"{tr.id},{tr.start.x},{tr.start.y},{tr.heading_deg},"
                f"{tr.speed_mps},{tr.altitude_agl_m},{tr.duration_s}\n"
            )


def read_trajectories_csv(path: str, grid: TerrainGrid, altitude_mode: str = "constant") -> list[Trajectory]:
    """Replay a trajectory set; start heights are rebuilt from the terrain."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise ParseError(f"cannot read trajectory file {path}: {exc}") from exc
    if not lines or lines[0] != TRAJECTORY_CSV_HEADER:
        raise ParseError(f"{path}:1: expected header {TRAJECTORY_CSV_HEADER!r}")
    out = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split(",")
        if len(parts) != 7:
            raise ParseError(f"{path}:{lineno}: expected 7 fields, got {len(parts)}")
        try:
            tid = int(parts[0])
            sx, sy, heading, speed, agl, duration = (float(v) for v in parts[1:])
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: bad value: {exc}") from exc
        z = elevation_at(grid, sx, sy) + agl
        out.append(
            Trajectory(
                id=tid,
                start=Position(sx, sy, z),
                heading_deg=heading,
                speed_mps=speed,
                altitude_agl_m=agl,
                duration_s=duration,
                altitude_mode=altitude_mode,
            )
        )
    return out
