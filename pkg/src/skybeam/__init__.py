"""skybeam: system-level simulator for beam-steered mmWave cells serving UAVs."""

from .antenna import (
    ArraySpec,
    ElementPattern,
    SectorOrientation,
    SteeringAngles,
    gain_db_many,
    half_power_beamwidth_deg,
    parse_topology,
    pattern_cut,
)
from .channel import LinkSample, RadioConfig, noise_power_dbm, pathloss_db, snr_db
from .engine import (
    RunReport,
    ScenarioConfig,
    TrajectoryParams,
    config_from_dict,
    load_config,
    run,
    sweep,
    write_report,
)
from .errors import (
    AnalysisError,
    BoundsError,
    ConfigError,
    GeometryError,
    InvalidPositionError,
    ParseError,
    SkybeamError,
    SweepError,
)
from .handover import A3Config, ConnectionState, HandoverEvent
from .kernels import BACKEND
from .metrics import (
    TrajectoryMetrics,
    ecdf,
    handover_rate,
    outage_cost,
    ping_pong_count,
)
from .mobility import Trajectory, generate_trajectories
from .network import Deployment, MeasurementContext, Sector, Site, load_deployment
from .terrain import DirectionAngles, Position, TerrainGrid, load_terrain

__version__ = "0.1.0"

__all__ = [
    "A3Config",
    "AnalysisError",
    "ArraySpec",
    "BACKEND",
    "BoundsError",
    "ConfigError",
    "ConnectionState",
    "Deployment",
    "DirectionAngles",
    "ElementPattern",
    "GeometryError",
    "HandoverEvent",
    "InvalidPositionError",
    "LinkSample",
    "MeasurementContext",
    "ParseError",
    "Position",
    "RadioConfig",
    "RunReport",
    "ScenarioConfig",
    "Sector",
    "SectorOrientation",
    "Site",
    "SkybeamError",
    "SteeringAngles",
    "SweepError",
    "TerrainGrid",
    "Trajectory",
    "TrajectoryMetrics",
    "TrajectoryParams",
    "config_from_dict",
    "ecdf",
    "gain_db_many",
    "generate_trajectories",
    "half_power_beamwidth_deg",
    "handover_rate",
    "load_config",
    "load_deployment",
    "load_terrain",
    "noise_power_dbm",
    "outage_cost",
    "parse_topology",
    "pathloss_db",
    "pattern_cut",
    "ping_pong_count",
    "run",
    "snr_db",
    "sweep",
    "write_report",
]
