"""
context.py – everything one recognition query can see.

A RecognitionContext holds the in-window events of the vessels a shard is
responsible for, the grid and the pattern parameters. Fluents derived while
answering the query are memoised per FluentKey and thrown away with the
context: every query re-derives its fluents from the window alone.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from geostream.geo import GeoPoint
from geostream.recognition.ce_instance import CeConfig
from geostream.recognition.event_instance import EventInstance, FluentKey
from geostream.recognition.interval import Interval, MaximalIntervalList
from geostream.spatial.grid_index import GridIndex

Cell = Tuple[int, int]


class StopSpan(BaseModel):
    model_config = ConfigDict(frozen=True)

    mmsi: int
    t_start: int
    t_end: int
    pos: GeoPoint
    cell: Cell


class VesselFluents(BaseModel):
    """What pair patterns need to know about one vessel, keyed for cell-wise evaluation."""

    model_config = ConfigDict(frozen=True)

    mmsi: int
    cells: Dict[Cell, MaximalIntervalList] = Field(default_factory=dict)
    delays: MaximalIntervalList = MaximalIntervalList()
    stops: List[StopSpan] = Field(default_factory=list)

    def touched_cells(self) -> set:
        return set(self.cells) | {s.cell for s in self.stops}


class RecognitionContext:
    def __init__(self, q: int, omega_s: int, events: Iterable[EventInstance], grid: GridIndex, cfg: CeConfig):
        self.q = q
        self.omega_s = omega_s
        self.grid = grid
        self.cfg = cfg
        self.by_vessel: Dict[int, List[EventInstance]] = defaultdict(list)
        for e in sorted(events, key=EventInstance.sort_key):
            self.by_vessel[e.vessel].append(e)
        self._cache: Dict[FluentKey, MaximalIntervalList] = {}
        self._near: Dict[GeoPoint, bool] = {}

    @property
    def window(self) -> Tuple[int, int]:
        return (self.q - self.omega_s, self.q)

    @property
    def window_interval(self) -> Interval:
        return Interval(start=max(0, self.q - self.omega_s + 1), end=self.q + 1)

    def vessels(self) -> List[int]:
        return sorted(self.by_vessel)

    def events_of(self, vessel: int, *names: str) -> List[EventInstance]:
        evs = self.by_vessel.get(vessel, [])
        return [e for e in evs if e.name in names] if names else list(evs)

    def event_at(self, vessel: int, name: str, tau: int) -> Optional[EventInstance]:
        for e in self.by_vessel.get(vessel, ()):
            if e.tau == tau and e.name == name:
                return e
        return None

    def near_ports(self, p: GeoPoint) -> bool:
        hit = self._near.get(p)
        if hit is None:
            hit = self._near[p] = self.grid.near_ports(p)
        return hit

    def fluent(self, key: FluentKey, derive: Callable[[], MaximalIntervalList]) -> MaximalIntervalList:
        """Memoised fluent lookup; derive() runs at most once per key and query."""
        found = self._cache.get(key)
        if found is None:
            found = self._cache[key] = derive()
        return found
