"""
Gaps during which the vessel cannot have gone anywhere: assuming a straight
line between the two gap endpoints, its highest possible speed stays below
delay_speed_knots.
"""

from __future__ import annotations

import logging
from typing import List

from geostream.errors import OpenGapError
from geostream.geo import haversine, mps_to_knots
from geostream.recognition.ce_instance import CeInstance, CeName
from geostream.recognition.context import RecognitionContext
from geostream.recognition.event_instance import FluentKey
from geostream.recognition.gap_pattern import gap_fluent
from geostream.recognition.interval import Interval, MaximalIntervalList
from geostream.recognition.ipattern import IPattern
from geostream.tracking.critical_point import Annotation

logger = logging.getLogger(__name__)


def gap_speed_knots(distance_m: float, duration_s: int) -> float:
    return mps_to_knots(distance_m / duration_s)


def _gap_speed(ctx: RecognitionContext, vessel: int, iv: Interval) -> float:
    if iv.end is None:
        raise OpenGapError(f"gap of {vessel} from {iv.start} has not ended")
    start = ctx.event_at(vessel, Annotation.GAP_START.value, iv.start)
    end = ctx.event_at(vessel, Annotation.GAP_END.value, iv.end)
    return gap_speed_knots(haversine(start.pos, end.pos), iv.end - iv.start)


def suspicious_delay(ctx: RecognitionContext, vessel: int) -> MaximalIntervalList:
    def derive() -> MaximalIntervalList:
        kept: List[Interval] = []
        for iv in gap_fluent(ctx, vessel):
            try:
                speed = _gap_speed(ctx, vessel, iv)
            except OpenGapError:
                continue
            if speed < ctx.cfg.delay_speed_knots:
                kept.append(iv)
            else:
                logger.debug("gap %s of %s covers %.2f kn, not a delay", iv, vessel, speed)
        return MaximalIntervalList(intervals=kept)

    return ctx.fluent(FluentKey(name="suspiciousDelay", args=(vessel,)), derive)


@IPattern.pattern_type(CeName.SUSPICIOUS_DELAY.value)
class SuspiciousDelayPattern(IPattern):
    def recognize(self, ctx: RecognitionContext, vessel: int) -> List[CeInstance]:
        out: List[CeInstance] = []
        for iv in suspicious_delay(ctx, vessel):
            start = ctx.event_at(vessel, Annotation.GAP_START.value, iv.start)
            out.append(
                CeInstance(
                    name=CeName.SUSPICIOUS_DELAY,
                    participants=(vessel,),
                    interval=iv,
                    pos=start.pos,
                    cell=ctx.grid.cell_xy(start.pos),
                    q=ctx.q,
                )
            )
        return out
