"""Coordinate frame, terrain elevation grid, direction angles and line of sight.

Everything lives in a local east-north-up frame in meters: x east, y north,
z up (above sea level).  Elevation angles (theta) are measured from the
zenith, so 0 deg points straight up and 90 deg is the horizon.  Azimuth
(phi) is a compass bearing: 0 deg north, clockwise positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundsError, GeometryError, InvalidPositionError, ParseError

DEFAULT_LOS_STEP_M = 5.0
DEFAULT_AREA = (-2000.0, -2000.0, 2000.0, 2000.0)
_FLAT_CELL_M = 100.0
_EDGE_TOL = 1e-9


@dataclass(frozen=True)
class Position:
    """A point in the local frame; z is meters above sea level."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise ValueError(f"position components must be finite: ({self.x}, {self.y}, {self.z})")


@dataclass(frozen=True)
class DirectionAngles:
    """theta_deg from zenith in [0, 180]; phi_deg compass azimuth, stored in [0, 360)."""

    theta_deg: float
    phi_deg: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta_deg) and math.isfinite(self.phi_deg)):
            raise ValueError("direction angles must be finite")
        if not -_EDGE_TOL <= self.theta_deg <= 180.0 + _EDGE_TOL:
            raise ValueError(f"theta_deg out of [0, 180]: {self.theta_deg}")
        object.__setattr__(self, "theta_deg", min(max(self.theta_deg, 0.0), 180.0))
        object.__setattr__(self, "phi_deg", self.phi_deg % 360.0)


@dataclass(frozen=True)
class TerrainGrid:
    """Row-major grid of ground heights with node spacing cell_size.

    heights[row, col] is the ground height at
    (origin_x + col * cell_size, origin_y + row * cell_size); queries between
    nodes are bilinearly interpolated.  The instance is immutable so it can be
    shared freely across worker processes.
    """

    origin_x: float
    origin_y: float
    cell_size: float
    heights: np.ndarray

    def __post_init__(self) -> None:
        h = np.asarray(self.heights, dtype=np.float64)
        if h.ndim != 2 or h.shape[0] < 2 or h.shape[1] < 2:
            raise ValueError("heights must be 2-D with at least 2 rows and 2 columns")
        if not np.all(np.isfinite(h)):
            raise ValueError("heights must be finite")
        if not (math.isfinite(self.cell_size) and self.cell_size > 0):
            raise ValueError(f"cell_size must be > 0, got {self.cell_size}")
        h = h.copy()
        h.flags.writeable = False
        object.__setattr__(self, "heights", h)
        object.__setattr__(self, "_h_min", float(h.min()))
        object.__setattr__(self, "_h_max", float(h.max()))

    @property
    def n_rows(self) -> int:
        return int(self.heights.shape[0])

    @property
    def n_cols(self) -> int:
        return int(self.heights.shape[1])

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        """(x_min, y_min, x_max, y_max) covered by the grid."""
        return (
            self.origin_x,
            self.origin_y,
            self.origin_x + (self.n_cols - 1) * self.cell_size,
            self.origin_y + (self.n_rows - 1) * self.cell_size,
        )

    @property
    def is_flat(self) -> bool:
        return self._h_min == self._h_max  # type: ignore[attr-defined]


def make_flat_grid(area: tuple[float, float, float, float], height: float) -> TerrainGrid:
    """Synthetic constant-height grid covering at least `area`."""
    x0, y0, x1, y1 = area
    if not (x1 > x0 and y1 > y0):
        raise ValueError(f"area must have positive extent, got {area}")
    n_cols = max(2, int(math.ceil((x1 - x0) / _FLAT_CELL_M)) + 1)
    n_rows = max(2, int(math.ceil((y1 - y0) / _FLAT_CELL_M)) + 1)
    heights = np.full((n_rows, n_cols), float(height))
    return TerrainGrid(x0, y0, _FLAT_CELL_M, heights)


def elevation_many(grid: TerrainGrid, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Bilinear ground height at each (x, y); raises BoundsError off-grid."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    fx = (xs - grid.origin_x) / grid.cell_size
    fy = (ys - grid.origin_y) / grid.cell_size
    max_fx = grid.n_cols - 1
    max_fy = grid.n_rows - 1
    bad = (fx < -_EDGE_TOL) | (fx > max_fx + _EDGE_TOL) | (fy < -_EDGE_TOL) | (fy > max_fy + _EDGE_TOL)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise BoundsError(
            f"point ({xs.flat[i]}, {ys.flat[i]}) outside terrain bounds {grid.bounds}"
        )
    fx = np.clip(fx, 0.0, max_fx)
    fy = np.clip(fy, 0.0, max_fy)
    col = np.clip(np.floor(fx).astype(np.intp), 0, grid.n_cols - 2)
    row = np.clip(np.floor(fy).astype(np.intp), 0, grid.n_rows - 2)
    tx = fx - col
    ty = fy - row
    h = grid.heights
    h00 = h[row, col]
    h01 = h[row, col + 1]
    h10 = h[row + 1, col]
    h11 = h[row + 1, col + 1]
    return (
        h00 * (1 - tx) * (1 - ty)
        + h01 * tx * (1 - ty)
        + h10 * (1 - tx) * ty
        + h11 * tx * ty
    )


def elevation_at(grid: TerrainGrid, x: float, y: float) -> float:
    return float(elevation_many(grid, np.array([x]), np.array([y]))[0])


def distance(frm: Position, to: Position) -> float:
    return math.sqrt((to.x - frm.x) ** 2 + (to.y - frm.y) ** 2 + (to.z - frm.z) ** 2)


def angles_to(frm: Position, to: Position) -> DirectionAngles:
    """Zenith angle and compass bearing of `to` as seen from `frm`."""
    dx = to.x - frm.x
    dy = to.y - frm.y
    dz = to.z - frm.z
    dist = math.sqrt(dx * dx + dy * dy + dz * dz)
    if dist < 1e-12:
        raise GeometryError("cannot take angles between coincident points")
    theta = math.degrees(math.acos(max(-1.0, min(1.0, dz / dist))))
    phi = math.degrees(math.atan2(dx, dy)) % 360.0
    return DirectionAngles(theta, phi)


def line_of_sight(
    grid: TerrainGrid,
    a: Position,
    b: Position,
    step_m: float = DEFAULT_LOS_STEP_M,
) -> bool:
    """True when the straight segment a-b clears the interpolated terrain.

    The segment is subdivided uniformly so no two samples are farther apart
    than step_m; the subdivision is symmetric, so los(a, b) == los(b, a).
    Endpoints below local ground are rejected.
    """
    if not (step_m > 0):
        raise ValueError(f"step_m must be > 0, got {step_m}")
    for p in (a, b):
        if p.z < elevation_at(grid, p.x, p.y) - _EDGE_TOL:
            raise InvalidPositionError(f"endpoint ({p.x}, {p.y}, {p.z}) is below terrain")
    if grid.is_flat:
        # both endpoints clear a constant-height plane, so the chord does too
        return True
    dist = distance(a, b)
    n = int(math.ceil(dist / step_m))
    if n <= 1:
        return True
    t = np.arange(1, n) / n
    xs = a.x + t * (b.x - a.x)
    ys = a.y + t * (b.y - a.y)
    zs = a.z + t * (b.z - a.z)
    ground = elevation_many(grid, xs, ys)
    return bool(np.all(zs >= ground - _EDGE_TOL))


def load_terrain(source: str, area: tuple[float, float, float, float] | None = None) -> TerrainGrid:
    """Build a TerrainGrid from "flat:<height>" or a CSV file path.

    CSV layout: one header line `origin_x,origin_y,cell_size,n_rows,n_cols`
    followed by n_rows lines of n_cols comma-separated heights.
    """
    if source.startswith("flat:"):
        try:
            height = float(source[len("flat:"):])
        except ValueError as exc:
            raise ParseError(f"invalid flat terrain spec {source!r}: height must be a number") from exc
        return make_flat_grid(area or DEFAULT_AREA, height)
    return _load_terrain_csv(source)


def _load_terrain_csv(path: str) -> TerrainGrid:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise ParseError(f"cannot read terrain file {path}: {exc}") from exc
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError(f"{path}:1: empty terrain file")
    head = lines[0].split(",")
    if len(head) != 5:
        raise ParseError(f"{path}:1: header must be origin_x,origin_y,cell_size,n_rows,n_cols")
    try:
        origin_x, origin_y, cell_size = (float(v) for v in head[:3])
        n_rows, n_cols = (int(v) for v in head[3:])
    except ValueError as exc:
        raise ParseError(f"{path}:1: bad header value: {exc}") from exc
    if len(lines) - 1 != n_rows:
        raise ParseError(f"{path}: expected {n_rows} height rows, got {len(lines) - 1}")
    heights = np.empty((n_rows, n_cols))
    for r, ln in enumerate(lines[1:]):
        parts = ln.split(",")
        if len(parts) != n_cols:
            raise ParseError(f"{path}:{r + 2}: expected {n_cols} heights, got {len(parts)}")
        try:
            heights[r] = [float(v) for v in parts]
        except ValueError as exc:
            raise ParseError(f"{path}:{r + 2}: bad height value: {exc}") from exc
    try:
        return TerrainGrid(origin_x, origin_y, cell_size, heights)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def write_terrain_csv(grid: TerrainGrid, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{grid.origin_x},{grid.origin_y},{grid.cell_size},{grid.n_rows},{grid.n_cols}\n")
        for row in grid.heights:
            fh.write(",".join(str(v) for v in row) + "\n")
