"""
engine.py – one continuous query over the recognition window.

Recognition runs in two phases so that it can be split across shards
without changing its answer:

  1. vessel phase – per-vessel patterns plus a VesselFluents summary of each
     vessel (cells visited, suspicious delays, open-sea stops);
  2. cell phase   – pair patterns evaluated cell by cell over the summaries
     of the vessels that touched the cell.

Both phases are pure functions of the in-window events, the grid and the
pattern parameters.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from geostream.recognition.ce_instance import CeConfig, CeInstance
from geostream.recognition.context import RecognitionContext, VesselFluents
from geostream.recognition.event_instance import EventInstance
from geostream.recognition.ipattern import IPattern, PatternScope
from geostream.recognition.picking_pattern import open_sea_stops
from geostream.recognition.rendezvous_pattern import in_cell_fluents
from geostream.recognition.suspicious_delay_pattern import suspicious_delay
from geostream.recognition.window import RecognitionWindow
from geostream.spatial.grid_index import GridIndex

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


def summarize_vessel(ctx: RecognitionContext, vessel: int) -> VesselFluents:
    delays = suspicious_delay(ctx, vessel)
    # cell occupancy only matters to a vessel that is delayed
    cells = in_cell_fluents(ctx, vessel) if delays else {}
    return VesselFluents(mmsi=vessel, cells=cells, delays=delays, stops=open_sea_stops(ctx, vessel))


def recognize_vessels(
    ctx: RecognitionContext,
    patterns: Sequence[IPattern],
    vessels: Optional[Iterable[int]] = None,
) -> Tuple[List[CeInstance], Dict[int, VesselFluents]]:
    ces: List[CeInstance] = []
    summaries: Dict[int, VesselFluents] = {}
    vessel_patterns = [p for p in patterns if p.scope is PatternScope.VESSEL]
    for v in sorted(vessels) if vessels is not None else ctx.vessels():
        for pattern in vessel_patterns:
            ces.extend(pattern.recognize(ctx, v))
        summary = summarize_vessel(ctx, v)
        if summary.cells or summary.stops:
            summaries[v] = summary
    return ces, summaries


def group_by_cell(summaries: Iterable[VesselFluents]) -> Dict[Cell, Dict[int, VesselFluents]]:
    out: Dict[Cell, Dict[int, VesselFluents]] = defaultdict(dict)
    for s in summaries:
        for c in s.touched_cells():
            out[c][s.mmsi] = s
    return out


def recognize_cells(
    by_cell: Mapping[Cell, Mapping[int, VesselFluents]],
    patterns: Sequence[IPattern],
    cfg: CeConfig,
    q: int,
) -> List[CeInstance]:
    pair_patterns = [p for p in patterns if p.scope is PatternScope.PAIR]
    ces: List[CeInstance] = []
    for cell in sorted(by_cell):
        fluents = by_cell[cell]
        if len(fluents) < 2:
            continue
        for pattern in pair_patterns:
            ces.extend(pattern.recognize_cell(cell, fluents, cfg, q))
    return ces


def recognize(
    q: int,
    omega_s: int,
    events: Iterable[EventInstance],
    grid: GridIndex,
    cfg: CeConfig,
    patterns: Sequence[IPattern],
) -> List[CeInstance]:
    """Both phases on a single shard."""
    ctx = RecognitionContext(q, omega_s, events, grid, cfg)
    ces, summaries = recognize_vessels(ctx, patterns)
    ces.extend(recognize_cells(group_by_cell(summaries.values()), patterns, cfg, q))
    ces.sort(key=CeInstance.sort_key)
    return ces


def query(window: RecognitionWindow, patterns: Sequence[IPattern], grid: GridIndex, cfg: CeConfig) -> List[CeInstance]:
    """Recognized CEs at the window's current query time."""
    if window.q_time is None:
        raise ValueError("window has not been advanced to a query time")
    ces = recognize(window.q_time, window.omega_s, window.events(), grid, cfg, patterns)
    logger.debug("query at %s: %d events, %d CEs", window.q_time, len(window), len(ces))
    return ces
