"""Exception types shared across the simulator."""


class SkybeamError(Exception):
    """Base class for all simulator errors."""


class BoundsError(SkybeamError):
    """Query outside the terrain grid."""


class GeometryError(SkybeamError):
    """Degenerate geometry, e.g. coincident points."""


class InvalidPositionError(SkybeamError):
    """Position below terrain or otherwise unusable."""


class ParseError(SkybeamError):
    """Malformed input file; the message names the offending field or line."""


class ConfigError(SkybeamError):
    """Invalid scenario configuration; the message names the offending key."""


class AnalysisError(SkybeamError):
    """A pattern analysis could not find the requested feature."""


class SweepError(SkybeamError):
    """A sweep aborted after one run failed; completed runs are preserved."""
