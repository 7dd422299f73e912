"""
Slow, obviously-correct reference implementations the fast code is checked
against.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, List, Sequence, Set, Tuple

from geostream.geo import GeoPoint, haversine_lonlat
from geostream.tracking.critical_point import Annotation, CriticalPoint
from geostream.tracking.position_report import PositionReport


# ---------------------------------------------------------------------------
# fluents, one time point at a time
# ---------------------------------------------------------------------------
def brute_holds(inits: Iterable[int], terms: Iterable[int], lo: int, hi: int, until: int) -> Set[int]:
    """Time points in (lo, until] at which the fluent holds, evidence restricted to (lo, hi]."""
    inits = {t for t in inits if lo < t <= hi}
    terms = {t for t in terms if lo < t <= hi}
    holding = False
    out: Set[int] = set()
    for t in range(lo + 1, until + 1):
        if t in inits:
            holding = True
        elif t in terms:
            holding = False
        if holding:
            out.add(t)
    return out


def points_of(mil, lo: int, until: int) -> Set[int]:
    return {t for t in range(lo + 1, until + 1) if mil.holds_at(t)}


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------
def _is_left(ax, ay, bx, by, px, py) -> float:
    return (bx - ax) * (py - ay) - (px - ax) * (by - ay)


def winding_number(px: float, py: float, ring: Sequence[GeoPoint]) -> int:
    wn = 0
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if a.lat <= py:
            if b.lat > py and _is_left(a.lon, a.lat, b.lon, b.lat, px, py) > 0:
                wn += 1
        elif b.lat <= py and _is_left(a.lon, a.lat, b.lon, b.lat, px, py) < 0:
            wn -= 1
    return wn


def inside_polygon(px: float, py: float, ring: Sequence[GeoPoint], holes: Sequence[Sequence[GeoPoint]] = ()) -> bool:
    if winding_number(px, py, ring) == 0:
        return False
    return all(winding_number(px, py, h) == 0 for h in holes)


# ---------------------------------------------------------------------------
# proximity
# ---------------------------------------------------------------------------
def all_pairs_nearby(positions: Dict[int, GeoPoint], v: int, radius_m: float) -> List[int]:
    here = positions[v]
    return sorted(
        other for other, p in positions.items()
        if other != v and haversine_lonlat(here.lon, here.lat, p.lon, p.lat) <= radius_m
    )


# ---------------------------------------------------------------------------
# synchronized RMSE
# ---------------------------------------------------------------------------
def _expected_position(t: int, anchors: List[Tuple[int, float, float]], stops: List[CriticalPoint]) -> Tuple[float, float]:
    for s in stops:
        if s.t_start <= t <= s.t_end:
            return s.pos.lon, s.pos.lat
    for (t0, x0, y0), (t1, x1, y1) in zip(anchors, anchors[1:]):
        if t0 <= t <= t1:
            f = (t - t0) / (t1 - t0)
            return x0 + f * (x1 - x0), y0 + f * (y1 - y0)
    raise AssertionError(f"{t} outside the anchors")


def independent_rmse(raw: Sequence[PositionReport], synopsis: Sequence[CriticalPoint]) -> float:
    """RMSE over the raw points inside the synopsis' time span."""
    anchors: Dict[int, Tuple[float, float]] = {}
    for cp in sorted(synopsis, key=lambda c: c.t_start):
        for t in {cp.t_start, cp.t_end}:
            anchors.setdefault(t, (cp.pos.lon, cp.pos.lat))
    ordered = sorted((t, x, y) for t, (x, y) in anchors.items())
    stops = [cp for cp in synopsis if cp.annotation is Annotation.STOPPED]
    lo, hi = ordered[0][0], ordered[-1][0]
    squares = []
    for r in raw:
        if not lo <= r.tau <= hi:
            continue
        if len(ordered) == 1:
            x, y = ordered[0][1], ordered[0][2]
        else:
            x, y = _expected_position(r.tau, ordered, stops)
        squares.append(haversine_lonlat(r.pos.lon, r.pos.lat, x, y) ** 2)
    return math.sqrt(sum(squares) / len(squares)) if squares else 0.0
