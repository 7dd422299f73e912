# Public re-exports
from .interval import (
    EMPTY,
    Interval,
    MaximalIntervalList,
    holds_at,
    holds_for,
    intersect_all,
    union_all,
)
from .event_instance import EventInstance, FluentKey, start_end_events
from .window import RecognitionWindow, ingest
from .ce_instance import CeConfig, CeInstance, CeName
from .context import RecognitionContext, StopSpan, VesselFluents
from .ipattern import IPattern, PatternScope

# pattern modules register themselves on import
from .gap_pattern import GapPattern, gap_fluent
from .suspicious_delay_pattern import SuspiciousDelayPattern, suspicious_delay
from .rendezvous_pattern import RendezvousPattern, possible_rendezvous
from .fast_approach_pattern import FastApproachPattern, fast_approach
from .picking_pattern import PickingPattern, possible_picking
from .low_speed_pattern import LowSpeedPattern, low_speed_fluent
from .engine import group_by_cell, query, recognize, recognize_cells, recognize_vessels, summarize_vessel

__all__ = [
    "EMPTY",
    "Interval",
    "MaximalIntervalList",
    "holds_for",
    "holds_at",
    "intersect_all",
    "union_all",
    "FluentKey",
    "EventInstance",
    "start_end_events",
    "RecognitionWindow",
    "ingest",
    "CeConfig",
    "CeInstance",
    "CeName",
    "RecognitionContext",
    "VesselFluents",
    "StopSpan",
    "IPattern",
    "PatternScope",
    "GapPattern",
    "SuspiciousDelayPattern",
    "RendezvousPattern",
    "FastApproachPattern",
    "PickingPattern",
    "LowSpeedPattern",
    "gap_fluent",
    "suspicious_delay",
    "possible_rendezvous",
    "fast_approach",
    "possible_picking",
    "low_speed_fluent",
    "summarize_vessel",
    "recognize_vessels",
    "recognize_cells",
    "group_by_cell",
    "recognize",
    "query",
]
