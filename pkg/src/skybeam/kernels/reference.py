"""Pure-numpy gain kernels.

This is the fallback used when the compiled extension is unavailable, and
the reference the extension is checked against.  All entry points take
flat, equal-length float64 arrays of angles in degrees and return a float64
array of the same length; broadcasting and shaping are the caller's job
(see skybeam.antenna).

Frame convention: theta is measured from the array zenith, phi from the
panel boresight (signed, wrapped internally).  Element spacings are in
wavelengths, which is the only way spacing enters the phase terms.
"""
from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi
AF_FLOOR = 1e-12


def element_gain_db(
    theta_deg: np.ndarray,
    phi_deg: np.ndarray,
    max_gain_dbi: float,
    hpbw_deg: float,
    side_lobe_floor_db: float,
    front_back_db: float,
) -> np.ndarray:
    """Patch-style element gain in dBi (parabolic attenuation, two floors)."""
    theta = np.asarray(theta_deg, dtype=np.float64)
    phi = np.asarray(phi_deg, dtype=np.float64)
    phi = (phi + 180.0) % 360.0 - 180.0
    att_v = np.minimum(12.0 * ((theta - 90.0) / hpbw_deg) ** 2, side_lobe_floor_db)
    att_h = np.minimum(12.0 * (phi / hpbw_deg) ** 2, side_lobe_floor_db)
    return max_gain_dbi - np.minimum(att_v + att_h, front_back_db)


def _axis_sum(psi: np.ndarray, count: int, amps) -> np.ndarray:
    """Complex sum over one array axis: sum_i amps[i] * exp(1j * i * psi)."""
    acc = np.zeros(psi.shape, dtype=np.complex128)
    for i in range(count):
        a = 1.0 if amps is None else amps[i]
        acc += a * np.exp(1j * (i * psi))
    return acc


def array_factor_mag(
    theta_deg: np.ndarray,
    phi_deg: np.ndarray,
    steer_theta_deg: np.ndarray,
    steer_phi_deg: np.ndarray,
    m: int,
    n: int,
    dz_wl: float,
    dy_wl: float,
    amps_z=None,
    amps_y=None,
) -> np.ndarray:
    """|S_z * S_y| for an m (vertical) by n (horizontal) rectangular array.

    Each axis sum runs over progressive phase i * psi where
    psi_z = 2*pi*dz*(cos(theta) - cos(theta0)) and
    psi_y = 2*pi*dy*(sin(theta)sin(phi) - sin(theta0)sin(phi0)),
    i.e. the steering phase is baked in so the magnitude peaks at the
    steering direction with value m*n (uniform excitation).
    """
    theta = np.radians(np.asarray(theta_deg, dtype=np.float64))
    phi = np.radians(np.asarray(phi_deg, dtype=np.float64))
    th0 = np.radians(np.asarray(steer_theta_deg, dtype=np.float64))
    ph0 = np.radians(np.asarray(steer_phi_deg, dtype=np.float64))
    psi_z = TWO_PI * dz_wl * (np.cos(theta) - np.cos(th0))
    psi_y = TWO_PI * dy_wl * (np.sin(theta) * np.sin(phi) - np.sin(th0) * np.sin(ph0))
    sz = _axis_sum(psi_z, m, amps_z)
    sy = _axis_sum(psi_y, n, amps_y)
    return np.abs(sz) * np.abs(sy)


def composite_gain_db(
    theta_deg: np.ndarray,
    phi_deg: np.ndarray,
    steer_theta_deg: np.ndarray,
    steer_phi_deg: np.ndarray,
    m: int,
    n: int,
    dz_wl: float,
    dy_wl: float,
    amps_z,
    amps_y,
    max_gain_dbi: float,
    hpbw_deg: float,
    side_lobe_floor_db: float,
    front_back_db: float,
) -> np.ndarray:
    """Element gain plus array factor, normalized so the peak sits at
    element + 10*log10(m*n) dBi for uniform excitation."""
    el = element_gain_db(theta_deg, phi_deg, max_gain_dbi, hpbw_deg, side_lobe_floor_db, front_back_db)
    af = array_factor_mag(
        theta_deg, phi_deg, steer_theta_deg, steer_phi_deg, m, n, dz_wl, dy_wl, amps_z, amps_y
    )
    return el + 20.0 * np.log10(np.maximum(af, AF_FLOOR)) - 10.0 * np.log10(m * n)
