"""Per-trajectory metrics, empirical CDFs and the CSV round-trip helpers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError
from .handover import HandoverEvent

METRICS_CSV_HEADER = (
    "trajectory_id,outage_cost,handovers_per_min,ping_pongs,"
    "realized_duration_s,min_snr_db,mean_snr_db,max_snr_db"
)
HANDOVERS_CSV_HEADER = "trajectory_id,t,from,to,delta_db"
ECDF_CSV_HEADER = "value,cum_fraction"

DEFAULT_PING_PONG_WINDOW_S = 1.0


@dataclass(frozen=True)
class TrajectoryMetrics:
    trajectory_id: int
    outage_cost: float
    handovers_per_min: float
    ping_pongs: int
    realized_duration_s: float
    min_snr_db: float
    mean_snr_db: float
    max_snr_db: float


def _snr_values(samples) -> np.ndarray:
    if len(samples) and hasattr(samples[0], "snr_db"):
        return np.array([s.snr_db for s in samples], dtype=np.float64)
    return np.asarray(samples, dtype=np.float64)


def outage_cost(samples: Sequence, threshold_db: float) -> float:
    """Fraction of samples strictly below the SNR threshold.

    Accepts LinkSamples or bare SNR values; with a fixed time step this is
    the fraction of flight time spent in outage.
    """
    snr = _snr_values(samples)
    if snr.size == 0:
        raise ValueError("outage_cost needs at least one sample")
    return float(np.count_nonzero(snr < threshold_db) / snr.size)


def handover_rate(log: Sequence[HandoverEvent], duration_s: float) -> float:
    """Handovers per minute, normalized by the realized flight time."""
    if not duration_s > 0:
        raise ValueError(f"duration_s must be > 0, got {duration_s}")
    return 60.0 * len(log) / duration_s


def ping_pong_count(
    log: Sequence[HandoverEvent], window_s: float = DEFAULT_PING_PONG_WINDOW_S
) -> int:
    """Handovers that bounce straight back to the previous cell within the window."""
    count = 0
    for prev, cur in zip(log, log[1:]):
        if cur.to_sector == prev.from_sector and (cur.t - prev.t) <= window_s + 1e-9:
            count += 1
    return count


def ecdf(values: Iterable[float]) -> list[tuple[float, float]]:
    """Empirical CDF as (value, cumulative fraction) steps; ends at 1.0."""
    arr = np.sort(np.asarray(list(values), dtype=np.float64))
    if arr.size == 0:
        raise ValueError("ecdf needs at least one value")
    out: list[tuple[float, float]] = []
    n = arr.size
    for i, v in enumerate(arr):
        if i + 1 < n and arr[i + 1] == v:
            continue  # keep only the last (highest-fraction) step per value
        out.append((float(v), (i + 1) / n))
    return out


def summarize_trajectory(
    trajectory_id: int,
    samples: Sequence,
    log: Sequence[HandoverEvent],
    realized_duration_s: float,
    outage_threshold_db: float,
    ping_pong_window_s: float = DEFAULT_PING_PONG_WINDOW_S,
) -> TrajectoryMetrics:
    snr = _snr_values(samples)
    return TrajectoryMetrics(
        trajectory_id=trajectory_id,
        outage_cost=outage_cost(snr, outage_threshold_db),
        handovers_per_min=handover_rate(log, realized_duration_s),
        ping_pongs=ping_pong_count(log, ping_pong_window_s),
        realized_duration_s=realized_duration_s,
        min_snr_db=float(snr.min()),
        mean_snr_db=float(snr.mean()),
        max_snr_db=float(snr.max()),
    )


# --- CSV writers/readers -------------------------------------------------------
# Floats are written with repr semantics, so every file parses back losslessly.


def write_metrics_csv(rows: Sequence[TrajectoryMetrics], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(METRICS_CSV_HEADER + "\n")
        for r in rows:
            fh.write(
                f"{r.trajectory_id},{r.outage_cost},{r.handovers_per_min},{r.ping_pongs},"
                f"{r.realized_duration_s},{r.min_snr_db},{r.mean_snr_db},{r.max_snr_db}\n"
            )


def read_metrics_csv(path: str) -> list[TrajectoryMetrics]:
    lines = _read_lines(path, METRICS_CSV_HEADER)
    out = []
    for lineno, ln in lines:
        parts = ln.split(",")
        if len(parts) != 8:
            raise ParseError(f"{path}:{lineno}: expected 8 fields, got {len(parts)}")
        try:
            out.append(
                TrajectoryMetrics(
                    trajectory_id=int(parts[0]),
                    outage_cost=float(parts[1]),
                    handovers_per_min=float(parts[2]),
                    ping_pongs=int(parts[3]),
                    realized_duration_s=float(parts[4]),
                    min_snr_db=float(parts[5]),
                    mean_snr_db=float(parts[6]),
                    max_snr_db=float(parts[7]),
                )
            )
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: bad value: {exc}") from exc
    return out


def write_handovers_csv(rows: Sequence[tuple[int, HandoverEvent]], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(HANDOVERS_CSV_HEADER + "\n")
        for tid, ev in rows:
            fh.write(f"{tid},{ev.t},{ev.from_sector},{ev.to_sector},{ev.trigger_rx_delta_db}\n")


def read_handovers_csv(path: str) -> list[tuple[int, HandoverEvent]]:
    lines = _read_lines(path, HANDOVERS_CSV_HEADER)
    out = []
    for lineno, ln in lines:
        parts = ln.split(",")
        if len(parts) != 5:
            raise ParseError(f"{path}:{lineno}: expected 5 fields, got {len(parts)}")
        try:
            out.append(
                (
                    int(parts[0]),
                    HandoverEvent(
                        t=float(parts[1]),
                        from_sector=int(parts[2]),
                        to_sector=int(parts[3]),
                        trigger_rx_delta_db=float(parts[4]),
                    ),
                )
            )
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: bad value: {exc}") from exc
    return out


def write_ecdf_csv(steps: Sequence[tuple[float, float]], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(ECDF_CSV_HEADER + "\n")
        for value, frac in steps:
            fh.write(f"{value},{frac}\n")


def read_ecdf_csv(path: str) -> list[tuple[float, float]]:
    lines = _read_lines(path, ECDF_CSV_HEADER)
    out = []
    for lineno, ln in lines:
        parts = ln.split(",")
        if len(parts) != 2:
            raise ParseError(f"{path}:{lineno}: expected 2 fields, got {len(parts)}")
        try:
            out.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: bad value: {exc}") from exc
    return out


def _read_lines(path: str, expected_header: str) -> list[tuple[int, str]]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.rstrip("\n") for ln in fh]
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    lines = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip()]
    if not lines or lines[0][1] != expected_header:
        raise ParseError(f"{path}:1: expected header {expected_header!r}")
    return lines[1:]
