"""
Two vessels that are both suspiciously delayed at the same time while located
in the same grid cell.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Tuple

from geostream.recognition.ce_instance import CeConfig, CeInstance, CeName
from geostream.recognition.context import RecognitionContext, VesselFluents
from geostream.recognition.event_instance import FluentKey
from geostream.recognition.interval import EMPTY, MaximalIntervalList, holds_for, intersect_all, union_all
from geostream.recognition.ipattern import IPattern, PatternScope

Cell = Tuple[int, int]


def in_cell_fluents(ctx: RecognitionContext, vessel: int) -> Dict[Cell, MaximalIntervalList]:
    """
    in(vessel, cell): every located event initiates the cell it lies in and
    terminates all others; the last known cell persists through a gap.
    """
    located: List[Tuple[int, Cell]] = []
    for e in ctx.events_of(vessel):
        if e.pos is None:
            continue
        c = ctx.grid.cell_xy(e.pos)
        located.append((e.tau, c))
        if e.since is not None:
            located.append((e.since, c))
    times: Dict[Cell, List[int]] = defaultdict(list)
    for t, c in located:
        times[c].append(t)
    out: Dict[Cell, MaximalIntervalList] = {}
    for c, inits in times.items():
        terms = [t for t, other in located if other != c]
        key = FluentKey(name="in", args=(vessel, f"{c[0]}:{c[1]}"))
        mil = ctx.fluent(key, lambda inits=inits, terms=terms: holds_for(inits, terms, window=ctx.window))
        if mil:
            out[c] = mil
    return out


def rendezvous_in_cell(a: VesselFluents, b: VesselFluents, cell: Cell) -> MaximalIntervalList:
    return intersect_all([a.cells.get(cell, EMPTY), b.cells.get(cell, EMPTY), a.delays, b.delays])


def possible_rendezvous(a: VesselFluents, b: VesselFluents) -> MaximalIntervalList:
    """Union over every cell both vessels visited; symmetric in a and b."""
    shared = sorted(set(a.cells) & set(b.cells))
    return union_all(rendezvous_in_cell(a, b, c) for c in shared)


@IPattern.pattern_type(CeName.POSSIBLE_RENDEZVOUS.value)
class RendezvousPattern(IPattern):
    scope = PatternScope.PAIR

    def recognize_cell(self, cell: Cell, fluents: Mapping[int, VesselFluents], cfg: CeConfig, q: int) -> List[CeInstance]:
        present = sorted(m for m, f in fluents.items() if cell in f.cells and f.delays)
        out: List[CeInstance] = []
        for v1, v2 in combinations(present, 2):
            for iv in rendezvous_in_cell(fluents[v1], fluents[v2], cell):
                out.append(
                    CeInstance(name=CeName.POSSIBLE_RENDEZVOUS, participants=(v1, v2), interval=iv, cell=cell, q=q)
                )
        return out
