"""
noise_filter.py – single-pass rejection of noisy AIS positions.

Rules run in a fixed order and the first one that matches decides:

  1. TimestampConflict – same tau as the last accepted report, replaces it (see below)
  2. Duplicate         – coordinates within dup_epsilon_m of the last point
  3. ImplausibleSpeed  – implied speed above max_speed (or time runs backwards)
  4. AbruptTurn        – heading jumps more than abrupt_turn_deg
  5. OffCourse         – heading AND speed both depart from the mean velocity

Of two messages with the same timestamp the latest is kept: it replaces its
twin, which the tracker rolls back together with any critical point the twin
produced. The velocity of the replacement is taken against the state that
preceded the twin.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from geostream.geo import VelocityVector, haversine, heading_delta, velocity_between
from geostream.tracking.position_report import PositionReport
from geostream.tracking.vessel_state import VesselState, mean_velocity

logger = logging.getLogger(__name__)


class NoiseReason(str, Enum):
    OFF_COURSE = "OffCourse"
    ABRUPT_TURN = "AbruptTurn"
    IMPLAUSIBLE_SPEED = "ImplausibleSpeed"
    DUPLICATE = "Duplicate"
    TIMESTAMP_CONFLICT = "TimestampConflict"


class NoiseConfig(BaseModel):
    """Calibration knobs of the noise heuristics; none of the thresholds are published values."""

    model_config = ConfigDict(extra="forbid")

    max_speed: float = Field(default=50.0, gt=0, description="knots")
    abrupt_turn_deg: float = Field(default=60.0, gt=0)
    offcourse_turn_deg: float = Field(default=60.0, gt=0)
    offcourse_speed_ratio: float = Field(default=0.5, gt=0)
    dup_epsilon_m: float = Field(default=0.0, ge=0)
    v_min: float = Field(default=1.0, gt=0, description="knots; heading rules need motion")
    history_horizon_s: int = Field(default=600, gt=0)


class NoiseVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    accepted: bool
    reason: Optional[NoiseReason] = None
    retracts_previous: bool = False
    velocity: Optional[VelocityVector] = None

    @model_validator(mode="after")
    def _reason_iff_rejected(self) -> "NoiseVerdict":
        if self.accepted == (self.reason is not None):
            raise ValueError("a verdict carries a reason exactly when it rejects")
        return self


def _reject(reason: NoiseReason) -> NoiseVerdict:
    return NoiseVerdict(accepted=False, reason=reason)


def filter_report(report: PositionReport, state: VesselState, cfg: NoiseConfig) -> NoiseVerdict:
    """Judge one report against the vessel's accepted history."""
    last = state.last
    if last is None:
        return NoiseVerdict(accepted=True)

    if report.tau == last.tau:
        if report.pos == last.pos:
            # a resent copy of the accepted message
            return _reject(NoiseReason.DUPLICATE)
        # the latest of two same-timestamp messages is kept
        history = state.history(retract=True)
        velocity = None
        if history:
            ref = history[-1]
            velocity = velocity_between(ref.pos, ref.tau, report.pos, report.tau)
        logger.debug("vessel %s tau=%s replaces its same-timestamp twin", report.mmsi, report.tau)
        return NoiseVerdict(accepted=True, retracts_previous=True, velocity=velocity)

    reason, velocity = _check(report, state.history(), cfg)
    if reason is not None:
        logger.debug("vessel %s tau=%s rejected: %s", report.mmsi, report.tau, reason.value)
        return _reject(reason)
    return NoiseVerdict(accepted=True, velocity=velocity)


def _check(report: PositionReport, history, cfg: NoiseConfig):
    ref = history[-1]
    if haversine(ref.pos, report.pos) <= cfg.dup_epsilon_m:
        return NoiseReason.DUPLICATE, None
    if report.tau < ref.tau:
        # the vessel would have to travel back in time
        return NoiseReason.IMPLAUSIBLE_SPEED, None

    v_new = velocity_between(ref.pos, ref.tau, report.pos, report.tau)
    if v_new.speed > cfg.max_speed:
        return NoiseReason.IMPLAUSIBLE_SPEED, v_new

    # heading rules need a velocity history that is recent and in motion
    prev_v = ref.velocity
    if prev_v is None or report.tau - ref.tau > cfg.history_horizon_s or v_new.speed < cfg.v_min:
        return None, v_new

    if prev_v.speed >= cfg.v_min and heading_delta(prev_v.heading, v_new.heading) > cfg.abrupt_turn_deg:
        return NoiseReason.ABRUPT_TURN, v_new

    v_m = mean_velocity(history)
    if v_m is not None and v_m.speed >= cfg.v_min:
        turned = heading_delta(v_m.heading, v_new.heading) > cfg.offcourse_turn_deg
        ratio = abs(v_new.speed - v_m.speed) / max(v_m.speed, cfg.v_min)
        if turned and ratio > cfg.offcourse_speed_ratio:
            return NoiseReason.OFF_COURSE, v_new
    return None, v_new
