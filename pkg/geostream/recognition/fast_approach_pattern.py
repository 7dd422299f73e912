"""A vessel speeding up above fast_speed_knots at open sea, heading towards a nearby vessel."""

from __future__ import annotations

from typing import List, Optional

from geostream.errors import UnknownVesselError
from geostream.recognition.ce_instance import CeInstance, CeName
from geostream.recognition.context import RecognitionContext
from geostream.recognition.event_instance import EventInstance
from geostream.recognition.ipattern import IPattern
from geostream.tracking.critical_point import Annotation


def fast_approach(ctx: RecognitionContext, vessel: int, me: EventInstance) -> Optional[CeInstance]:
    cfg = ctx.cfg
    if me.velocity is None or me.pos is None or me.velocity.speed <= cfg.fast_speed_knots:
        return None
    if ctx.near_ports(me.pos):
        return None
    try:
        heading = ctx.grid.heading_to_vessels(
            vessel, me.velocity.heading, cone_deg=cfg.approach_cone_deg, radius_m=cfg.approach_radius_m, at=me.tau
        )
    except UnknownVesselError:
        return None
    if not heading:
        return None
    return CeInstance(
        name=CeName.FAST_APPROACH,
        participants=(vessel,),
        tau=me.tau,
        pos=me.pos,
        cell=ctx.grid.cell_xy(me.pos),
        q=ctx.q,
    )


@IPattern.pattern_type(CeName.FAST_APPROACH.value)
class FastApproachPattern(IPattern):
    def recognize(self, ctx: RecognitionContext, vessel: int) -> List[CeInstance]:
        found = (fast_approach(ctx, vessel, me) for me in ctx.events_of(vessel, Annotation.SPEED_CHANGE.value))
        return [ce for ce in found if ce is not None]
