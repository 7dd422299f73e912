"""Slow motion in open sea, bounded by lowSpeedStart and lowSpeedEnd."""

from __future__ import annotations

from typing import List

from geostream.recognition.ce_instance import CeInstance, CeName
from geostream.recognition.context import RecognitionContext
from geostream.recognition.event_instance import FluentKey
from geostream.recognition.interval import MaximalIntervalList, holds_for
from geostream.recognition.ipattern import IPattern
from geostream.tracking.critical_point import Annotation


def low_speed_fluent(ctx: RecognitionContext, vessel: int) -> MaximalIntervalList:
    def derive() -> MaximalIntervalList:
        inits = [e.tau for e in ctx.events_of(vessel, Annotation.LOW_SPEED_START.value) if not ctx.near_ports(e.pos)]
        terms = [e.tau for e in ctx.events_of(vessel, Annotation.LOW_SPEED_END.value)]
        return holds_for(inits, terms, window=ctx.window)

    return ctx.fluent(FluentKey(name="lowSpeed", args=(vessel,)), derive)


@IPattern.pattern_type(CeName.LOW_SPEED.value)
class LowSpeedPattern(IPattern):
    def recognize(self, ctx: RecognitionContext, vessel: int) -> List[CeInstance]:
        out: List[CeInstance] = []
        for iv in low_speed_fluent(ctx, vessel):
            start = ctx.event_at(vessel, Annotation.LOW_SPEED_START.value, iv.start)
            out.append(
                CeInstance(
                    name=CeName.LOW_SPEED,
                    participants=(vessel,),
                    interval=iv,
                    pos=start.pos if start is not None else None,
                    q=ctx.q,
                )
            )
        return out
