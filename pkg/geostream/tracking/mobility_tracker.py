"""
mobility_tracker.py – online detection of trajectory events per vessel.

Every accepted position gets an instantaneous-event bitmap. Long-lasting
events are then examined in a fixed order (gap, long-term stop, slow
motion, smooth turn) and the first one that fires ends the inspection of
that position; otherwise the bitmap is checked against the mean velocity
for a single turn or speed change. Each emitted critical point carries
exactly one annotation.

A course or speed change shows up in the velocity of the newest segment,
but the vessel changed course at the point where that segment begins, so
turns and speed changes are emitted at that vertex. Likewise a stop begins
at the position the vessel arrived at, one report before the first pause.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from typing import Dict, Iterable, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from geostream.geo import GeoPoint, VelocityVector, haversine, heading_delta, signed_heading_delta
from geostream.tracking.critical_point import Annotation, CriticalPoint
from geostream.tracking.noise_filter import NoiseConfig, NoiseReason, NoiseVerdict, filter_report
from geostream.tracking.position_report import PositionReport
from geostream.tracking.vessel_state import (
    BufferedPoint,
    InstantFlags,
    PointClass,
    VesselState,
)

logger = logging.getLogger(__name__)

_ZERO = VelocityVector()


class TrackerConfig(BaseModel):
    """Mobility tracking parameters; defaults are the aggressive calibration."""

    model_config = ConfigDict(extra="forbid")

    v_min: float = Field(default=1.0, gt=0, description="knots")
    alpha_pct: float = Field(default=25.0, gt=0)
    gap_period_s: int = Field(default=600, gt=0)
    turn_threshold_deg: float = Field(default=15.0, gt=0)
    stop_radius_m: float = Field(default=250.0, gt=0)
    m_window: int = Field(default=10, gt=0)
    # smallest incremental heading change that makes a point part of a smooth turn
    turn_member_deg: float = Field(default=1.0, gt=0)
    # a pause that outlasts this many reports is summarized piecewise
    max_idle_run: int = Field(default=720, gt=0)

    @model_validator(mode="after")
    def _idle_run_holds_a_stop(self) -> "TrackerConfig":
        if self.max_idle_run < self.m_window:
            raise ValueError(f"max_idle_run {self.max_idle_run} is shorter than m_window {self.m_window}")
        return self


class CompressionResult(BaseModel):
    forwarded: List[CriticalPoint] = Field(default_factory=list)
    retracted: List[CriticalPoint] = Field(default_factory=list)
    evicted: int = 0


def speed_change_ratio(v_now: float, v_ref: float) -> float:
    """|v_now - v_ref| / v_now, with the singular v_now == 0 case pinned down."""
    if v_now == 0.0:
        return math.inf if v_ref > 0.0 else 0.0
    return abs(v_now - v_ref) / v_now


def flag_instantaneous(report: PositionReport, state: VesselState, cfg: TrackerConfig) -> InstantFlags:
    """
    Set pause / speed-change / turn bits for the newest buffered point.
    Each bit holds exactly when its own condition does; whether a bit is
    worth a critical point is decided later, in detect_events.
    """
    point = state.last
    v_now = state.v_now
    if point is None or point.report is not report or v_now is None:
        return InstantFlags.NONE
    flags = InstantFlags.NONE
    if v_now.speed < cfg.v_min:
        flags |= InstantFlags.PAUSE
    v_prev = state.v_prev
    if v_prev is not None:
        if speed_change_ratio(v_now.speed, v_prev.speed) > cfg.alpha_pct / 100.0:
            flags |= InstantFlags.SPEED_CHANGE
        if heading_delta(v_prev.heading, v_now.heading) > cfg.turn_threshold_deg:
            flags |= InstantFlags.TURN
    point.flags = flags
    return flags


def _critical(
    state: VesselState,
    point: BufferedPoint,
    annotation: Annotation,
    cls: PointClass,
    velocity: Optional[VelocityVector] = None,
) -> CriticalPoint:
    state.mark_critical(point, cls)
    return CriticalPoint(
        mmsi=state.mmsi,
        t_start=point.tau,
        t_end=point.tau,
        pos=point.pos,
        annotation=annotation,
        velocity=velocity or point.velocity or _ZERO,
    )


def _outgoing(state: VesselState, point: BufferedPoint) -> Optional[VelocityVector]:
    """Velocity the vessel left `point` with."""
    after = False
    for p in state.buffer:
        if after:
            return p.velocity
        after = p is point
    return None


def _centroid(points: List[BufferedPoint]) -> GeoPoint:
    n = len(points)
    return GeoPoint(
        lon=sum(p.pos.lon for p in points) / n,
        lat=sum(p.pos.lat for p in points) / n,
    )


def _examine_idle_run(state: VesselState, cfg: TrackerConfig) -> List[CriticalPoint]:
    run = state.run
    if len(run) < cfg.m_window:
        return []
    span = [state.run_lead, *run] if state.run_lead is not None else list(run)
    center = _centroid(span)
    if all(haversine(center, p.pos) <= cfg.stop_radius_m for p in span):
        for p in span:
            state.mark_critical(p, PointClass.STOP)
        speed = sum(p.speed for p in run) / len(run)
        return [
            CriticalPoint(
                mmsi=state.mmsi,
                t_start=span[0].tau,
                t_end=run[-1].tau,
                pos=center,
                annotation=Annotation.STOPPED,
                velocity=VelocityVector(speed=speed, heading=run[-1].velocity.heading if run[-1].velocity else 0.0),
            )
        ]
    if all(p.speed <= cfg.v_min for p in run):
        for p in span[1:-1]:
            state.label(p, PointClass.LOW_SPEED)
        return [
            _critical(state, span[0], Annotation.LOW_SPEED_START, PointClass.LOW_SPEED),
            _critical(state, span[-1], Annotation.LOW_SPEED_END, PointClass.LOW_SPEED),
        ]
    return []


def _idle(point: BufferedPoint) -> bool:
    return bool(point.flags & (InstantFlags.PAUSE | InstantFlags.TURN))


def _extends_run(state: VesselState, cur: BufferedPoint) -> bool:
    """A run opens on a pause; once open, turns keep it going."""
    return bool(cur.flags & InstantFlags.PAUSE) or (bool(state.run) and _idle(cur))


def detect_events(report: PositionReport, state: VesselState, cfg: TrackerConfig) -> List[CriticalPoint]:
    """Run the long-lasting rules, then the bitmap rules, for the newest point."""
    cur = state.last
    prev = state.previous
    if cur is None or prev is None or cur.report is not report:
        return []

    # 1. communication gap
    if cur.tau - prev.tau > cfg.gap_period_s:
        events = [
            _critical(state, prev, Annotation.GAP_START, PointClass.GAP),
            _critical(state, cur, Annotation.GAP_END, PointClass.GAP),
        ]
        state.turn_reset_tau = cur.tau
        state.run = [cur] if cur.flags & InstantFlags.PAUSE else []
        state.run_lead = None
        return _emit(state, events)

    moving = prev.velocity is not None and cur.speed >= cfg.v_min and prev.speed >= cfg.v_min
    if moving:
        state.touch(prev)
        prev.turn_delta = signed_heading_delta(prev.velocity.heading, cur.velocity.heading)

    # 2./3. long-term stop or slow motion, examined when the vessel moves after a pause
    if cur.speed > cfg.v_min and prev.flags & InstantFlags.PAUSE:
        events = _examine_idle_run(state, cfg)
        state.run, state.run_lead = [], None
        if events:
            return _emit(state, events)
    elif _extends_run(state, cur):
        if not state.run:
            state.run_lead = prev
        state.run.append(cur)
        if len(state.run) >= cfg.max_idle_run:
            events = _examine_idle_run(state, cfg)
            state.run, state.run_lead = [], None
            if events:
                logger.debug("vessel %s: idle run capped at %d reports", state.mmsi, cfg.max_idle_run)
                return _emit(state, events)
    elif state.run:
        state.run, state.run_lead = [], None

    # 4. smooth turn: net heading change over the buffered vertices
    window = [p for p in state.buffer if p.tau > state.turn_reset_tau]
    acc = sum(p.turn_delta for p in window)
    if abs(acc) > cfg.turn_threshold_deg:
        members = [
            p for p in window
            if not p.critical and abs(p.turn_delta) >= cfg.turn_member_deg and p.turn_delta * acc > 0
        ]
        if members:
            return _emit(
                state,
                [_critical(state, p, Annotation.TURN, PointClass.TURN, _outgoing(state, p)) for p in members],
            )

    v_m = state.v_m
    if v_m is None or prev.critical:
        return []

    # 5. sharp turn confirmed against the mean course
    if moving and cur.flags & InstantFlags.TURN and heading_delta(cur.velocity.heading, v_m.heading) > cfg.turn_threshold_deg:
        return _emit(state, [_critical(state, prev, Annotation.TURN, PointClass.TURN, cur.velocity)])

    # 6. speed change confirmed against the mean speed
    if (
        cur.flags & InstantFlags.SPEED_CHANGE
        and max(cur.speed, prev.speed) >= cfg.v_min
        and speed_change_ratio(cur.speed, v_m.speed) > cfg.alpha_pct / 100.0
    ):
        return _emit(state, [_critical(state, prev, Annotation.SPEED_CHANGE, PointClass.SPEED_CHANGE, cur.velocity)])
    return []


def _emit(state: VesselState, events: List[CriticalPoint]) -> List[CriticalPoint]:
    state.emit(events)
    return events


def compress(state: VesselState) -> CompressionResult:
    """Hand over critical points found since the last call, with the eviction count."""
    out = CompressionResult(forwarded=state.pending, retracted=state.retracted, evicted=state.evicted)
    state.pending = []
    state.retracted = []
    state.evicted = 0
    return out


class TrackResult(BaseModel):
    verdict: NoiseVerdict
    points: List[CriticalPoint] = Field(default_factory=list)


class MobilityTracker:
    """
    Noise filter + tracker + compressor for a set of vessels.
    One instance is one tracking shard; it never sees another shard's vessels.
    """

    def __init__(self, tracker_cfg: TrackerConfig, noise_cfg: NoiseConfig, keep_raw: bool = False):
        self.cfg = tracker_cfg
        self.noise_cfg = noise_cfg
        self.keep_raw = keep_raw
        self.states: Dict[int, VesselState] = {}
        self.rejections: Counter = Counter()
        self.evicted = 0
        # points handed over by an earlier batch that a later report withdrew
        self.retracted: List[CriticalPoint] = []

    def state_of(self, mmsi: int) -> VesselState:
        state = self.states.get(mmsi)
        if state is None:
            state = VesselState(mmsi, self.cfg.m_window, keep_raw=self.keep_raw)
            self.states[mmsi] = state
        return state

    def process(self, report: PositionReport) -> TrackResult:
        state = self.state_of(report.mmsi)
        verdict = filter_report(report, state, self.noise_cfg)
        if not verdict.accepted:
            self.rejections[verdict.reason] += 1
            return TrackResult(verdict=verdict)
        if verdict.retracts_previous:
            state.rollback()
            self.rejections[NoiseReason.TIMESTAMP_CONFLICT] += 1
        state.advance(report, verdict.velocity)
        flag_instantaneous(report, state, self.cfg)
        points = detect_events(report, state, self.cfg)
        return TrackResult(verdict=verdict, points=points)

    def process_batch(self, reports: Iterable[PositionReport]) -> List[CriticalPoint]:
        """Track a batch and return its critical points in merge order."""
        for report in reports:
            self.process(report)
        out: List[CriticalPoint] = []
        for state in self.states.values():
            res = compress(state)
            self.evicted += res.evicted
            out.extend(res.forwarded)
            self.retracted.extend(res.retracted)
        out.sort(key=CriticalPoint.sort_key)
        return out

    def take_retracted(self) -> List[CriticalPoint]:
        out, self.retracted = self.retracted, []
        for state in self.states.values():
            out.extend(state.retracted)
            state.retracted = []
        return out

    def latest_positions(self) -> Dict[int, tuple]:
        """mmsi -> (position, tau) of every vessel's newest accepted report."""
        return {m: (s.last.pos, s.last.tau) for m, s in self.states.items() if s.last is not None}

    @property
    def accepted(self) -> int:
        return sum(s.accepted for s in self.states.values())

    def class_counts(self) -> Counter:
        counts: Counter = Counter()
        for s in self.states.values():
            counts.update(s.labels)
        return counts
