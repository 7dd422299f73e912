"""
Package picking: a vessel ends a stop at open sea and, within the hour,
another vessel starts a stop in the same cell less than half a kilometre away.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, List, Mapping, Tuple

from geostream.geo import haversine
from geostream.recognition.ce_instance import CeConfig, CeInstance, CeName
from geostream.recognition.context import RecognitionContext, StopSpan, VesselFluents
from geostream.recognition.ipattern import IPattern, PatternScope
from geostream.tracking.critical_point import Annotation

Cell = Tuple[int, int]


def open_sea_stops(ctx: RecognitionContext, vessel: int) -> List[StopSpan]:
    """Stops of the window that are not in any port."""
    return [
        StopSpan(mmsi=vessel, t_start=e.since, t_end=e.tau, pos=e.pos, cell=ctx.grid.cell_xy(e.pos))
        for e in ctx.events_of(vessel, Annotation.STOPPED.value)
        if e.pos is not None and e.since is not None and not ctx.near_ports(e.pos)
    ]


def possible_picking(drops: List[StopSpan], picks: List[StopSpan], cfg: CeConfig, q: int) -> List[CeInstance]:
    """end(stopped(v1)) at T_drop followed by start(stopped(v2)) at T_pick."""
    out: List[CeInstance] = []
    for d in drops:
        for p in picks:
            if d.mmsi == p.mmsi or d.cell != p.cell:
                continue
            if not 0 < p.t_start - d.t_end < cfg.picking_max_gap_s:
                continue
            if haversine(d.pos, p.pos) >= cfg.picking_max_dist_m:
                continue
            out.append(
                CeInstance(
                    name=CeName.POSSIBLE_PICKING,
                    participants=(d.mmsi, p.mmsi),
                    tau=p.t_start,
                    pos=p.pos,
                    cell=p.cell,
                    q=q,
                )
            )
    return out


@IPattern.pattern_type(CeName.POSSIBLE_PICKING.value)
class PickingPattern(IPattern):
    scope = PatternScope.PAIR

    def recognize_cell(self, cell: Cell, fluents: Mapping[int, VesselFluents], cfg: CeConfig, q: int) -> List[CeInstance]:
        stops: Dict[int, List[StopSpan]] = defaultdict(list)
        for m in sorted(fluents):
            stops[m].extend(s for s in fluents[m].stops if s.cell == cell)
        out: List[CeInstance] = []
        for v1 in sorted(stops):
            for v2 in sorted(stops):
                if v1 != v2:
                    out.extend(possible_picking(stops[v1], stops[v2], cfg, q))
        return out
