"""A3-style handover decisions, handover execution and periodic beam tracking.

The A3 condition compares the serving cell as currently served (possibly a
stale beam) against the strongest neighbor as it would serve with a fresh
beam.  The condition must hold continuously for time_to_trigger before a
candidate is reported; every reported candidate is granted and executed in
the same step at zero cost, with the target beam steered straight at the
UAV (clamped to the sector's scan limits).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import network
from .network import Deployment, MeasurementContext, Sector
from .terrain import Position

_TIME_TOL = 1e-9


@dataclass(frozen=True)
class A3Config:
    threshold_db: float = 3.0
    time_to_trigger_s: float = 0.0
    hysteresis_db: float = 0.0

    def __post_init__(self) -> None:
        if not self.time_to_trigger_s >= 0:
            raise ValueError(f"time_to_trigger_s must be >= 0, got {self.time_to_trigger_s}")
        if not self.hysteresis_db >= 0:
            raise ValueError(f"hysteresis_db must be >= 0, got {self.hysteresis_db}")


@dataclass(frozen=True)
class HandoverEvent:
    t: float
    from_sector: int
    to_sector: int
    trigger_rx_delta_db: float

    def __post_init__(self) -> None:
        if self.from_sector == self.to_sector:
            raise ValueError("handover event from a sector to itself")


@dataclass
class ConnectionState:
    serving_sector_id: int
    a3_pending_since: float | None = None
    handover_log: list[HandoverEvent] = field(default_factory=list)


def a3_decide(
    state: ConnectionState,
    serving_dbm: float,
    best_neighbor_id: int,
    best_neighbor_dbm: float,
    cfg: A3Config,
    t: float,
) -> tuple[int, float] | None:
    """Advance the A3 timer one measurement and maybe return a candidate.

    The caller supplies the strongest neighbor (ties already broken toward
    the lowest id).  Mutates state.a3_pending_since.  Returns
    (sector_id, delta_db) once the entry condition has held for
    time_to_trigger, else None.
    """
    delta = best_neighbor_dbm - serving_dbm
    if delta < cfg.threshold_db - cfg.hysteresis_db:
        state.a3_pending_since = None
        return None
    if delta >= cfg.threshold_db + cfg.hysteresis_db and state.a3_pending_since is None:
        state.a3_pending_since = t
    if state.a3_pending_since is None:
        return None
    if t - state.a3_pending_since >= cfg.time_to_trigger_s - _TIME_TOL:
        return int(best_neighbor_id), float(delta)
    return None


def evaluate_a3(
    state: ConnectionState,
    deployment: Deployment,
    uav_pos: Position,
    cfg: A3Config,
    t: float,
    ctx: MeasurementContext,
    serving_assumption: str = "current",
    neighbor_assumption: str = "aligned",
) -> tuple[int, float] | None:
    """Measure every cell and run the A3 decision for one step."""
    serving = deployment.sector_by_id(state.serving_sector_id)
    serving_dbm = network.measure_cell(serving, uav_pos, serving_assumption, ctx)
    best_id = None
    best_dbm = None
    for sector in deployment.sectors:  # ascending id; strict > keeps lowest id on ties
        if sector.id == state.serving_sector_id:
            continue
        rx = network.measure_cell(sector, uav_pos, neighbor_assumption, ctx)
        if best_dbm is None or rx > best_dbm:
            best_id = sector.id
            best_dbm = rx
    if best_id is None:
        state.a3_pending_since = None
        return None
    return a3_decide(state, serving_dbm, best_id, best_dbm, cfg, t)


def execute_handover(
    state: ConnectionState,
    to_sector: Sector,
    uav_pos: Position,
    t: float,
    trigger_rx_delta_db: float,
) -> ConnectionState:
    """Switch serving cells at zero cost and align the target beam.

    In static beam mode the target's pattern is fixed, so only the serving
    assignment changes.
    """
    if to_sector.id == state.serving_sector_id:
        raise ValueError(f"handover to the serving sector ({to_sector.id})")
    event = HandoverEvent(
        t=t,
        from_sector=state.serving_sector_id,
        to_sector=to_sector.id,
        trigger_rx_delta_db=trigger_rx_delta_db,
    )
    if to_sector.beam.mode == "tracking":
        to_sector.beam.steer = network.aligned_steering(to_sector, uav_pos)
        to_sector.beam.last_update_t = t
    state.serving_sector_id = to_sector.id
    state.a3_pending_since = None
    state.handover_log.append(event)
    return state


def tracking_update(sector: Sector, uav_pos: Position, t: float, update_period_s: float) -> None:
    """Re-aim the sector's beam at the UAV when the update period has elapsed.

    No-op for static beams and between updates; a fresh beam points straight
    at the UAV (clamped to scan limits) regardless of where it pointed before.
    """
    if not update_period_s > 0:
        raise ValueError(f"update_period_s must be > 0, got {update_period_s}")
    beam = sector.beam
    if beam.mode == "static":
        return
    if t - beam.last_update_t >= update_period_s - _TIME_TOL:
        beam.steer = network.aligned_steering(sector, uav_pos)
        beam.last_update_t = t
