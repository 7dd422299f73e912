"""
metrics.py – quality measures of trajectory synopses: synchronized RMSE,
compression ratio, the classification of raw positions and trip statistics.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from geostream.errors import EmptySynopsisError, ZeroRawCountError
from geostream.geo import EARTH_RADIUS_M, haversine
from geostream.tracking.critical_point import Annotation, CriticalPoint
from geostream.tracking.position_report import PositionReport
from geostream.tracking.vessel_state import PointClass

RMSE_BUCKETS_M = (10.0, 25.0, 50.0, 100.0)


def _haversine_np(lon1, lat1, lon2, lat2) -> np.ndarray:
    lon1, lat1, lon2, lat2 = map(np.radians, (lon1, lat1, lon2, lat2))
    h = np.sin((lat2 - lat1) / 2.0) ** 2 + np.cos(lat1) * np.cos(lat2) * np.sin((lon2 - lon1) / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * np.arcsin(np.sqrt(np.minimum(1.0, h)))


def _anchors(synopsis: Sequence[CriticalPoint]):
    """Time-ordered interpolation anchors; a stop anchors both ends of its span."""
    pts = []
    for cp in synopsis:
        pts.append((cp.t_start, cp.pos.lon, cp.pos.lat))
        if cp.t_end != cp.t_start:
            pts.append((cp.t_end, cp.pos.lon, cp.pos.lat))
    pts.sort(key=lambda a: a[0])
    t, lon, lat = [], [], []
    for a in pts:
        if t and a[0] == t[-1]:
            continue
        t.append(a[0])
        lon.append(a[1])
        lat.append(a[2])
    return np.asarray(t, dtype=float), np.asarray(lon), np.asarray(lat)


def synchronized_errors(raw: Sequence[PositionReport], synopsis: Sequence[CriticalPoint], span_only: bool = False) -> np.ndarray:
    """
    Haversine distance between every raw position and its time-aligned
    counterpart on the compressed trace. Raw points outside the anchors snap to
    the nearest critical point, or are left out when span_only is set.
    """
    if not synopsis:
        raise EmptySynopsisError("synopsis holds no critical point")
    at, alon, alat = _anchors(synopsis)
    rt = np.asarray([r.tau for r in raw], dtype=float)
    rlon = np.asarray([r.pos.lon for r in raw])
    rlat = np.asarray([r.pos.lat for r in raw])
    if span_only:
        keep = (rt >= at[0]) & (rt <= at[-1])
        rt, rlon, rlat = rt[keep], rlon[keep], rlat[keep]
    if rt.size == 0:
        return np.zeros(0)
    plon = np.interp(rt, at, alon)
    plat = np.interp(rt, at, alat)
    # stop centroids stand for every raw position of their span
    for cp in synopsis:
        if cp.annotation is Annotation.STOPPED:
            inside = (rt >= cp.t_start) & (rt <= cp.t_end)
            plon[inside] = cp.pos.lon
            plat[inside] = cp.pos.lat
    return _haversine_np(rlon, rlat, plon, plat)


def rmse(raw: Sequence[PositionReport], synopsis: Sequence[CriticalPoint], span_only: bool = False) -> float:
    """Root mean square of the synchronized distances, in meters."""
    errs = synchronized_errors(raw, synopsis, span_only=span_only)
    if errs.size == 0:
        return 0.0
    return float(np.sqrt(np.mean(errs ** 2)))


def compression_ratio(raw_count: int, critical_count: int) -> float:
    if raw_count <= 0:
        raise ZeroRawCountError("compression ratio of an empty stream")
    if critical_count > raw_count:
        raise ValueError(f"{critical_count} critical points out of {raw_count} raw positions")
    return (raw_count - critical_count) / raw_count


class ClassBreakdown(BaseModel):
    counts: Dict[PointClass, int] = Field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def share(self, cls: PointClass) -> float:
        return self.counts.get(cls, 0) / self.total if self.total else 0.0


def classify_breakdown(accepted: int, labels: Mapping[PointClass, int], rejected: int) -> ClassBreakdown:
    """
    Partition every raw input into exactly one class: rejected positions are
    noise, labelled accepted ones keep their label, the rest are normal.
    """
    counts = {cls: 0 for cls in PointClass}
    for cls, n in labels.items():
        counts[PointClass(cls)] += n
    counts[PointClass.NOISE] += rejected
    counts[PointClass.NORMAL] = accepted - sum(n for c, n in labels.items())
    return ClassBreakdown(counts=counts)


def characterise(points: Sequence[CriticalPoint]) -> Dict[str, int]:
    """Number of critical points per annotation."""
    c = Counter(p.annotation.value for p in points)
    return {a.value: c.get(a.value, 0) for a in Annotation}


def rmse_histogram(values: Sequence[float]) -> Dict[str, int]:
    edges = (0.0, *RMSE_BUCKETS_M, math.inf)
    out: Dict[str, int] = {}
    for lo, hi in zip(edges, edges[1:]):
        label = f"{lo:g}-{hi:g}" if hi != math.inf else f">={lo:g}"
        out[label] = sum(1 for v in values if lo <= v < hi)
    return out


class Trip(BaseModel):
    mmsi: int
    points: List[CriticalPoint]
    travel_time_s: int
    distance_m: float
    open_ended: bool = False


def _trip(points: List[CriticalPoint], open_ended: bool) -> Trip:
    dist = sum(haversine(a.pos, b.pos) for a, b in zip(points, points[1:]))
    first, last = points[0], points[-1]
    start = first.t_end if first.annotation is Annotation.STOPPED else first.t_start
    end = last.t_start
    return Trip(mmsi=first.mmsi, points=points, travel_time_s=max(0, end - start), distance_m=dist, open_ended=open_ended)


def reconstruct_trips(points: Sequence[CriticalPoint]) -> List[Trip]:
    """Split one vessel's critical points into trips delimited by stops."""
    pts = sorted(points, key=CriticalPoint.sort_key)
    stops = [i for i, p in enumerate(pts) if p.annotation is Annotation.STOPPED]
    if not pts:
        return []
    if not stops:
        return [_trip(pts, open_ended=True)]
    trips: List[Trip] = []
    if stops[0] > 0:
        trips.append(_trip(pts[: stops[0] + 1], open_ended=True))
    for a, b in zip(stops, stops[1:]):
        trips.append(_trip(pts[a : b + 1], open_ended=False))
    if stops[-1] < len(pts) - 1:
        trips.append(_trip(pts[stops[-1]:], open_ended=True))
    return trips


class TripStats(BaseModel):
    trips: int = 0
    open_ended: int = 0
    mean_travel_time_s: float = 0.0
    mean_distance_m: float = 0.0
    mean_points: float = 0.0


def summarize_trips(trips: Sequence[Trip]) -> TripStats:
    closed = [t for t in trips if not t.open_ended]
    if not trips:
        return TripStats()
    basis = closed or list(trips)
    return TripStats(
        trips=len(trips),
        open_ended=len(trips) - len(closed),
        mean_travel_time_s=sum(t.travel_time_s for t in basis) / len(basis),
        mean_distance_m=sum(t.distance_m for t in basis) / len(basis),
        mean_points=sum(len(t.points) for t in basis) / len(basis),
    )


def fleet_rmse(raw_by_vessel: Mapping[int, Sequence[PositionReport]], points_by_vessel: Mapping[int, Sequence[CriticalPoint]]) -> Dict[int, float]:
    """One RMSE per vessel over the span its critical points cover."""
    out: Dict[int, float] = {}
    for mmsi, raw in raw_by_vessel.items():
        syn = points_by_vessel.get(mmsi)
        if not syn or not raw:
            continue
        out[mmsi] = rmse(raw, syn, span_only=True)
    return out


def mean_or_zero(values: Sequence[float]) -> float:
    return float(np.mean(values)) if len(values) else 0.0


def max_or_zero(values: Sequence[float]) -> float:
    return float(np.max(values)) if len(values) else 0.0
