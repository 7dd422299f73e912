"""
synopsis_store.py – window-scoped retention of critical points.

Points stay in the store while t_end lies in (now - omega, now]; whatever
falls out on a slide is handed back for export.
"""

from __future__ import annotations

import bisect
import logging
from typing import Dict, Iterable, List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from geostream.tracking.critical_point import CriticalPoint

logger = logging.getLogger(__name__)


class WindowSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    range_omega_s: int = Field(default=21_600, gt=0)
    slide_beta_s: int = Field(default=600, gt=0)

    @model_validator(mode="after")
    def _slide_within_range(self) -> "WindowSpec":
        if self.slide_beta_s > self.range_omega_s:
            raise ValueError(f"slide {self.slide_beta_s}s exceeds range {self.range_omega_s}s")
        return self


class SynopsisState:
    """Per-vessel critical point lists, each sorted by t_start."""

    def __init__(self) -> None:
        self.by_vessel: Dict[int, List[CriticalPoint]] = {}
        self._keys: Dict[int, List[tuple]] = {}

    def add(self, points: Iterable[CriticalPoint]) -> None:
        for p in points:
            pts = self.by_vessel.setdefault(p.mmsi, [])
            keys = self._keys.setdefault(p.mmsi, [])
            k = p.sort_key()
            i = bisect.bisect_right(keys, k)
            keys.insert(i, k)
            pts.insert(i, p)

    def remove(self, point: CriticalPoint) -> bool:
        """Drop one point; False when it is not (or no longer) held."""
        pts = self.by_vessel.get(point.mmsi)
        if not pts:
            return False
        keys = self._keys[point.mmsi]
        k = point.sort_key()
        i = bisect.bisect_left(keys, k)
        while i < len(keys) and keys[i] == k:
            if pts[i] == point:
                del pts[i], keys[i]
                if not pts:
                    del self.by_vessel[point.mmsi], self._keys[point.mmsi]
                return True
            i += 1
        return False

    def slide(self, now: int, spec: WindowSpec) -> List[CriticalPoint]:
        """Drop and return every point with t_end <= now - omega."""
        cutoff = now - spec.range_omega_s
        evicted: List[CriticalPoint] = []
        for mmsi in list(self.by_vessel):
            pts = self.by_vessel[mmsi]
            keep = [p for p in pts if p.t_end > cutoff]
            if len(keep) == len(pts):
                continue
            evicted.extend(p for p in pts if p.t_end <= cutoff)
            if keep:
                self.by_vessel[mmsi] = keep
                self._keys[mmsi] = [p.sort_key() for p in keep]
            else:
                del self.by_vessel[mmsi]
                del self._keys[mmsi]
        evicted.sort(key=CriticalPoint.sort_key)
        if evicted:
            logger.debug("slide to %s evicted %d critical points", now, len(evicted))
        return evicted

    def flush(self) -> List[CriticalPoint]:
        """Empty the store, e.g. when the input is exhausted."""
        out = [p for pts in self.by_vessel.values() for p in pts]
        self.by_vessel.clear()
        self._keys.clear()
        out.sort(key=CriticalPoint.sort_key)
        return out

    def points(self) -> List[CriticalPoint]:
        out = [p for pts in self.by_vessel.values() for p in pts]
        out.sort(key=CriticalPoint.sort_key)
        return out

    def __len__(self) -> int:
        return sum(len(v) for v in self.by_vessel.values())


def slide(state: SynopsisState, now: int, spec: WindowSpec) -> List[CriticalPoint]:
    return state.slide(now, spec)
