"""Link budget: free-space pathloss, thermal noise, SNR.

Interference is deliberately out of scope; every link quality in the
simulator is SNR against thermal noise, and blockage enters only as a flat
NLOS penalty on top of free-space loss.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

log = logging.getLogger(__name__)

SPEED_OF_LIGHT = 299792458.0
# 20*log10(4*pi/c) for distance in m and frequency in Hz, rounded as pinned
FSPL_OFFSET_DB = 147.55
MIN_DISTANCE_M = 1.0


@dataclass(frozen=True)
class RadioConfig:
    carrier_hz: float = 26e9
    bandwidth_hz: float = 400e6
    tx_power_dbm: float = 18.0
    noise_density_dbm_hz: float = -174.0
    noise_figure_db: float = 9.0
    uav_antenna_gain_dbi: float = 0.0
    nlos_penalty_db: float = 20.0

    def __post_init__(self) -> None:
        if not self.carrier_hz > 0:
            raise ValueError(f"carrier_hz must be > 0, got {self.carrier_hz}")
        if not self.bandwidth_hz > 0:
            raise ValueError(f"bandwidth_hz must be > 0, got {self.bandwidth_hz}")
        if not self.nlos_penalty_db >= 0:
            raise ValueError(f"nlos_penalty_db must be >= 0, got {self.nlos_penalty_db}")

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_hz


@dataclass(frozen=True)
class LinkSample:
    """One per-step measurement of the serving link."""

    t: float
    serving_sector_id: int
    snr_db: float
    rx_power_dbm: float
    los: bool
    misalignment_deg: float


def pathloss_db(cfg: RadioConfig, distance_m, los=True):
    """Free-space pathloss, plus a flat penalty when not line-of-sight.

    Distances below 1 m are clamped to 1 m (logged); accepts scalars or
    arrays and follows numpy broadcasting.
    """
    d = np.asarray(distance_m, dtype=np.float64)
    if np.any(d < MIN_DISTANCE_M):
        log.warning("pathloss distance below %.0f m clamped", MIN_DISTANCE_M)
        d = np.maximum(d, MIN_DISTANCE_M)
    loss = 20.0 * np.log10(d) + 20.0 * math.log10(cfg.carrier_hz) - FSPL_OFFSET_DB
    loss = loss + np.where(np.asarray(los), 0.0, cfg.nlos_penalty_db)
    return float(loss) if np.ndim(loss) == 0 else loss


def noise_power_dbm(cfg: RadioConfig) -> float:
    """Thermal noise over the configured bandwidth, including the noise figure."""
    return cfg.noise_density_dbm_hz + 10.0 * math.log10(cfg.bandwidth_hz) + cfg.noise_figure_db


def snr_db(cfg: RadioConfig, tx_antenna_gain_db: float, distance_m: float, los: bool = True) -> float:
    """SNR of a single link: tx power + both antenna gains - pathloss - noise."""
    rx = (
        cfg.tx_power_dbm
        + tx_antenna_gain_db
        + cfg.uav_antenna_gain_dbi
        - pathloss_db(cfg, distance_m, los)
    )
    return rx - noise_power_dbm(cfg)
