"""Phased-array antenna model: element pattern, array factor, steering, cuts.

The array is a rectangular panel with m_vertical elements stacked along the
local z axis and n_horizontal elements along the local y axis, so the
boresight (panel normal) is the local direction theta=90, phi=0.  All
pattern math happens in that local frame; to_local() rotates a global
direction into it given the sector's mounting azimuth and downtilt.

Gain normalization: the composite gain is
    element_gain_db + 20*log10(|AF|) - 10*log10(m*n)
which puts the peak of a uniformly excited array at
element + 10*log10(m*n) dBi, i.e. 26.06 dBi for 8x8 over an 8 dBi element.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import AnalysisError, ParseError
from .terrain import DirectionAngles

_EDGE_TOL = 1e-9


@dataclass(frozen=True)
class ElementPattern:
    """Parabolic-in-dB patch element with side-lobe and front-back floors."""

    max_gain_dbi: float = 8.0
    hpbw_deg: float = 65.0
    side_lobe_floor_db: float = 30.0
    front_back_db: float = 30.0

    def __post_init__(self) -> None:
        if not self.hpbw_deg > 0:
            raise ValueError(f"hpbw_deg must be > 0, got {self.hpbw_deg}")
        if not (self.side_lobe_floor_db > 0 and self.front_back_db > 0):
            raise ValueError("attenuation floors must be > 0")


def _as_amp_tuple(amps, count: int, axis: str):
    if amps is None:
        return None
    amps = tuple(float(a) for a in amps)
    if len(amps) != count:
        raise ValueError(f"{axis} amplitudes must have length {count}, got {len(amps)}")
    if any(not (a > 0) for a in amps):
        raise ValueError(f"{axis} amplitudes must all be > 0")
    return amps


@dataclass(frozen=True)
class ArraySpec:
    """Rectangular array geometry; spacings are in wavelengths."""

    m_vertical: int = 8
    n_horizontal: int = 8
    dz_wavelengths: float = 0.5
    dy_wavelengths: float = 0.5
    element: ElementPattern = field(default_factory=ElementPattern)
    amps_vertical: tuple[float, ...] | None = None
    amps_horizontal: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not (isinstance(self.m_vertical, int) and self.m_vertical >= 1):
            raise ValueError(f"m_vertical must be an integer >= 1, got {self.m_vertical}")
        if not (isinstance(self.n_horizontal, int) and self.n_horizontal >= 1):
            raise ValueError(f"n_horizontal must be an integer >= 1, got {self.n_horizontal}")
        if not (self.dz_wavelengths > 0 and self.dy_wavelengths > 0):
            raise ValueError("element spacings must be > 0")
        object.__setattr__(
            self, "amps_vertical", _as_amp_tuple(self.amps_vertical, self.m_vertical, "vertical")
        )
        object.__setattr__(
            self,
            "amps_horizontal",
            _as_amp_tuple(self.amps_horizontal, self.n_horizontal, "horizontal"),
        )

    @property
    def n_elements(self) -> int:
        return self.m_vertical * self.n_horizontal


@dataclass(frozen=True)
class SteeringAngles:
    """Beam pointing in the array-local frame; phi0 stored in [0, 360)."""

    theta0_deg: float = 90.0
    phi0_deg: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta0_deg) and math.isfinite(self.phi0_deg)):
            raise ValueError("steering angles must be finite")
        if not -_EDGE_TOL <= self.theta0_deg <= 180.0 + _EDGE_TOL:
            raise ValueError(f"theta0_deg out of [0, 180]: {self.theta0_deg}")
        object.__setattr__(self, "theta0_deg", min(max(self.theta0_deg, 0.0), 180.0))
        object.__setattr__(self, "phi0_deg", self.phi0_deg % 360.0)


@dataclass(frozen=True)
class SectorOrientation:
    """Panel mounting: compass azimuth of the boresight and downward tilt."""

    boresight_azimuth_deg: float = 0.0
    downtilt_deg: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.boresight_azimuth_deg) and math.isfinite(self.downtilt_deg)):
            raise ValueError("orientation angles must be finite")
        if not -90.0 <= self.downtilt_deg <= 90.0:
            raise ValueError(f"downtilt_deg out of [-90, 90]: {self.downtilt_deg}")
        object.__setattr__(self, "boresight_azimuth_deg", self.boresight_azimuth_deg % 360.0)


def parse_topology(text: str) -> tuple[int, int]:
    """Parse "MxN" into (m_vertical, n_horizontal)."""
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ParseError(f"array topology must look like 8x8, got {text!r}")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ParseError(f"array topology must look like 8x8, got {text!r}") from exc
    if m < 1 or n < 1:
        raise ParseError(f"array topology counts must be >= 1, got {text!r}")
    return m, n


def wrap_signed_deg(angle: float | np.ndarray):
    """Wrap an angle (deg) into [-180, 180)."""
    return (np.asarray(angle, dtype=np.float64) + 180.0) % 360.0 - 180.0


# --- core pattern evaluation -------------------------------------------------

def _prep(*arrays):
    casts = [np.asarray(a, dtype=np.float64) for a in arrays]
    bcast = np.broadcast_arrays(*casts)
    shape = bcast[0].shape
    flat = [np.ascontiguousarray(b).ravel() for b in bcast]
    return flat, shape


def element_gain_db(pattern: ElementPattern, direction: DirectionAngles) -> float:
    """Element gain at a local direction, boresight at theta=90, phi=0."""
    out = kernels.element_gain_db(
        np.array([direction.theta_deg]),
        np.array([direction.phi_deg]),
        pattern.max_gain_dbi,
        pattern.hpbw_deg,
        pattern.side_lobe_floor_db,
        pattern.front_back_db,
    )
    return float(out[0])


def steering_phase_factors(
    spec: ArraySpec, steer: SteeringAngles, wavelength_m: float
) -> tuple[float, float]:
    """Per-element progressive phases (beta_z, beta_y) in radians.

    beta_z = -k * d_z * cos(theta0), beta_y = -k * d_y * sin(theta0) * sin(phi0)
    with k = 2*pi/wavelength.  With spacings stored in wavelengths the
    wavelength cancels, but it is validated because d_z = dz_wavelengths * wavelength.
    """
    if not wavelength_m > 0:
        raise ValueError(f"wavelength_m must be > 0, got {wavelength_m}")
    th0 = math.radians(steer.theta0_deg)
    ph0 = math.radians(steer.phi0_deg)
    beta_z = -2.0 * math.pi * spec.dz_wavelengths * math.cos(th0)
    beta_y = -2.0 * math.pi * spec.dy_wavelengths * math.sin(th0) * math.sin(ph0)
    return beta_z, beta_y


def array_factor(spec: ArraySpec, direction: DirectionAngles, steer: SteeringAngles) -> float:
    """Array factor magnitude |S_z * S_y|; peaks at m*n on the steered direction."""
    return float(
        array_factor_many(spec, direction.theta_deg, direction.phi_deg, steer.theta0_deg, steer.phi0_deg)
    )


def array_factor_many(spec: ArraySpec, theta_deg, phi_deg, steer_theta_deg, steer_phi_deg):
    flat, shape = _prep(theta_deg, phi_deg, steer_theta_deg, steer_phi_deg)
    out = kernels.array_factor_mag(
        *flat,
        spec.m_vertical,
        spec.n_horizontal,
        spec.dz_wavelengths,
        spec.dy_wavelengths,
        np.asarray(spec.amps_vertical, dtype=np.float64) if spec.amps_vertical else None,
        np.asarray(spec.amps_horizontal, dtype=np.float64) if spec.amps_horizontal else None,
    )
    return out.reshape(shape) if shape else float(out[0])


def array_gain_db(spec: ArraySpec, direction: DirectionAngles, steer: SteeringAngles) -> float:
    """Composite gain (element + normalized array factor) at a local direction."""
    return float(
        gain_db_many(spec, direction.theta_deg, direction.phi_deg, steer.theta0_deg, steer.phi0_deg)
    )


def gain_db_many(spec: ArraySpec, theta_deg, phi_deg, steer_theta_deg, steer_phi_deg):
    """Vectorized composite gain; arguments broadcast against each other."""
    flat, shape = _prep(theta_deg, phi_deg, steer_theta_deg, steer_phi_deg)
    el = spec.element
    out = kernels.composite_gain_db(
        *flat,
        spec.m_vertical,
        spec.n_horizontal,
        spec.dz_wavelengths,
        spec.dy_wavelengths,
        np.asarray(spec.amps_vertical, dtype=np.float64) if spec.amps_vertical else None,
        np.asarray(spec.amps_horizontal, dtype=np.float64) if spec.amps_horizontal else None,
        el.max_gain_dbi,
        el.hpbw_deg,
        el.side_lobe_floor_db,
        el.front_back_db,
    )
    return out.reshape(shape) if shape else float(out[0])


# --- global <-> local frame --------------------------------------------------

def _basis(orientation: SectorOrientation) -> np.ndarray:
    """Rows: boresight, local-east (y), local-up (z) unit vectors in the
    global east/north/up frame."""
    a = math.radians(orientation.boresight_azimuth_deg)
    d = math.radians(orientation.downtilt_deg)
    sa, ca = math.sin(a), math.cos(a)
    sd, cd = math.sin(d), math.cos(d)
    return np.array(
        [
            [cd * sa, cd * ca, -sd],
            [ca, -sa, 0.0],
            [sd * sa, sd * ca, cd],
        ]
    )


def to_local_many(orientation: SectorOrientation, theta_deg, phi_deg):
    """Rotate global directions into the array frame.

    Returns (theta_local_deg in [0, 180], phi_local_deg signed in [-180, 180)).
    """
    th = np.radians(np.asarray(theta_deg, dtype=np.float64))
    ph = np.radians(np.asarray(phi_deg, dtype=np.float64))
    st = np.sin(th)
    u = np.stack([st * np.sin(ph), st * np.cos(ph), np.cos(th)], axis=-1)
    return local_from_vectors(orientation, u)


def local_from_vectors(orientation: SectorOrientation, unit_vectors: np.ndarray):
    """Array-frame angles of global unit vectors (..., 3)."""
    b = _basis(orientation)
    comp = unit_vectors @ b.T
    theta_l = np.degrees(np.arccos(np.clip(comp[..., 2], -1.0, 1.0)))
    phi_l = np.degrees(np.arctan2(comp[..., 1], comp[..., 0]))
    return theta_l, phi_l


def to_local(orientation: SectorOrientation, direction: DirectionAngles) -> DirectionAngles:
    th, ph = to_local_many(orientation, direction.theta_deg, direction.phi_deg)
    return DirectionAngles(float(th), float(ph) % 360.0)


def angular_separation_deg(theta1_deg, phi1_deg, theta2_deg, phi2_deg):
    """Great-circle angle between two directions given as (theta, phi) pairs."""
    t1 = np.radians(np.asarray(theta1_deg, dtype=np.float64))
    p1 = np.radians(np.asarray(phi1_deg, dtype=np.float64))
    t2 = np.radians(np.asarray(theta2_deg, dtype=np.float64))
    p2 = np.radians(np.asarray(phi2_deg, dtype=np.float64))
    x1, y1, z1 = np.sin(t1) * np.sin(p1), np.sin(t1) * np.cos(p1), np.cos(t1)
    x2, y2, z2 = np.sin(t2) * np.sin(p2), np.sin(t2) * np.cos(p2), np.cos(t2)
    dot = x1 * x2 + y1 * y2 + z1 * z2
    cx, cy, cz = y1 * z2 - z1 * y2, z1 * x2 - x1 * z2, x1 * y2 - y1 * x2
    # atan2 stays well conditioned at 0 and 180 where arccos loses digits
    return np.degrees(np.arctan2(np.sqrt(cx * cx + cy * cy + cz * cz), dot))


# --- pattern cuts and beamwidth ----------------------------------------------

def pattern_cut(
    spec: ArraySpec,
    steer: SteeringAngles,
    plane: str,
    resolution_deg: float = 0.1,
) -> list[tuple[float, float]]:
    """Gain samples along one principal plane through the steering direction.

    azimuth: constant-theta cut at theta0; the angle column is the signed
    azimuth offset from the steering azimuth, spanning [-180, 180).
    elevation: constant-azimuth cut at phi0; the angle column is theta
    in [0, 180].
    """
    if not resolution_deg > 0:
        raise ValueError(f"resolution_deg must be > 0, got {resolution_deg}")
    angles, gains = _cut_arrays(spec, steer, plane, resolution_deg)
    return [(float(a), float(g)) for a, g in zip(angles, gains)]


def _cut_arrays(spec, steer, plane, resolution_deg):
    if plane == "azimuth":
        offsets = np.arange(-180.0, 180.0, resolution_deg)
        gains = gain_db_many(
            spec, steer.theta0_deg, steer.phi0_deg + offsets, steer.theta0_deg, steer.phi0_deg
        )
        return offsets, gains
    if plane == "elevation":
        thetas = np.arange(0.0, 180.0 + resolution_deg / 2, resolution_deg)
        thetas = thetas[thetas <= 180.0 + _EDGE_TOL]
        gains = gain_db_many(spec, thetas, steer.phi0_deg, steer.theta0_deg, steer.phi0_deg)
        return thetas, gains
    raise ValueError(f"plane must be 'azimuth' or 'elevation', got {plane!r}")


def _gain_at(spec, steer, plane, angle):
    if plane == "azimuth":
        return float(
            gain_db_many(spec, steer.theta0_deg, steer.phi0_deg + angle, steer.theta0_deg, steer.phi0_deg)
        )
    return float(gain_db_many(spec, angle, steer.phi0_deg, steer.theta0_deg, steer.phi0_deg))


def half_power_beamwidth_deg(
    spec: ArraySpec, steer: SteeringAngles, plane: str, scan_resolution_deg: float = 0.01
) -> float:
    """Width of the main lobe 3 dB below its peak, found numerically.

    The cut is scanned at scan_resolution_deg and each -3 dB crossing is
    refined by bisection, so the result is good to well under the scan
    resolution.  Raises AnalysisError when the lobe has no -3 dB crossing
    inside the cut.
    """
    angles, gains = _cut_arrays(spec, steer, plane, scan_resolution_deg)
    peak_idx = int(np.argmax(gains))
    peak = float(gains[peak_idx])
    target = peak - 3.0

    def refine(inside_idx: int, outside_idx: int) -> float:
        lo = angles[inside_idx]  # gain >= target here
        hi = angles[outside_idx]  # gain < target here
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if _gain_at(spec, steer, plane, mid) >= target:
                lo = mid
            else:
                hi = mid
            if abs(hi - lo) < 1e-6:
                break
        return 0.5 * (lo + hi)

    right = None
    for i in range(peak_idx + 1, len(angles)):
        if gains[i] < target:
            right = refine(i - 1, i)
            break
    left = None
    for i in range(peak_idx - 1, -1, -1):
        if gains[i] < target:
            left = refine(i + 1, i)
            break
    if left is None or right is None:
        raise AnalysisError(
            f"main lobe has no -3 dB crossing inside the {plane} cut (peak {peak:.2f} dBi)"
        )
    return float(right - left)
