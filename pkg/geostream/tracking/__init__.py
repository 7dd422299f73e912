# Public re-exports
from .position_report import PositionReport
from .critical_point import Annotation, CriticalPoint
from .vessel_state import BufferedPoint, InstantFlags, PointClass, VesselState, mean_velocity
from .noise_filter import NoiseConfig, NoiseReason, NoiseVerdict, filter_report
from .mobility_tracker import (
    CompressionResult,
    MobilityTracker,
    TrackerConfig,
    TrackResult,
    compress,
    detect_events,
    flag_instantaneous,
)

__all__ = [
    "PositionReport",
    "Annotation",
    "CriticalPoint",
    "BufferedPoint",
    "InstantFlags",
    "PointClass",
    "VesselState",
    "mean_velocity",
    "NoiseConfig",
    "NoiseReason",
    "NoiseVerdict",
    "filter_report",
    "TrackerConfig",
    "CompressionResult",
    "TrackResult",
    "MobilityTracker",
    "flag_instantaneous",
    "detect_events",
    "compress",
]
