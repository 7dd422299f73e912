"""
geometry.py – grid, area and port value types plus the planar predicates the
grid index is built on (ray crossings, segment/rectangle overlap).

Containment works on raw lon/lat as a plane; areas are regional so the
distortion is acceptable.
"""

from __future__ import annotations

import csv
import logging
import math
from enum import Enum
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import geojson
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from geostream.errors import MalformedRecordError
from geostream.geo import GeoPoint, haversine_lonlat

logger = logging.getLogger(__name__)

BBox = Tuple[float, float, float, float]

# Aegean / Eastern Mediterranean surveillance area
DEFAULT_BBOX: BBox = (19.0, 34.0, 30.0, 41.5)

_EPS = 1e-12


class GridConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    bbox: BBox = DEFAULT_BBOX
    nx: int = Field(default=30, ge=1)
    ny: int = Field(default=30, ge=1)

    @field_validator("bbox")
    @classmethod
    def _non_degenerate(cls, b: BBox) -> BBox:
        min_lon, min_lat, max_lon, max_lat = b
        if not (-180.0 <= min_lon < max_lon <= 180.0 and -90.0 <= min_lat < max_lat <= 90.0):
            raise ValueError(f"degenerate or invalid bbox {b}")
        return b

    @property
    def cell_width(self) -> float:
        return (self.bbox[2] - self.bbox[0]) / self.nx

    @property
    def cell_height(self) -> float:
        return (self.bbox[3] - self.bbox[1]) / self.ny

    def cell_bounds(self, ix: int, iy: int) -> BBox:
        min_lon, min_lat = self.bbox[0], self.bbox[1]
        return (
            min_lon + ix * self.cell_width,
            min_lat + iy * self.cell_height,
            min_lon + (ix + 1) * self.cell_width,
            min_lat + (iy + 1) * self.cell_height,
        )

    def min_cell_side_m(self) -> float:
        """Shortest cell side in meters, measured on the row closest to a pole."""
        min_lon, min_lat, _, max_lat = self.bbox
        lat = max(abs(min_lat), abs(max_lat))
        width = haversine_lonlat(min_lon, lat, min_lon + self.cell_width, lat)
        height = haversine_lonlat(min_lon, min_lat, min_lon, min_lat + self.cell_height)
        return max(1e-6, min(width, height))

    def contains(self, lon: float, lat: float) -> bool:
        min_lon, min_lat, max_lon, max_lat = self.bbox
        return min_lon <= lon <= max_lon and min_lat <= lat <= max_lat


class CellId(BaseModel):
    model_config = ConfigDict(frozen=True)

    ix: int = Field(ge=0)
    iy: int = Field(ge=0)

    def __str__(self) -> str:
        return f"{self.ix}:{self.iy}"

    def as_tuple(self) -> Tuple[int, int]:
        return (self.ix, self.iy)


class AreaKind(str, Enum):
    PROTECTED = "protected"
    OTHER = "other"


class AreaPolygon(BaseModel):
    """A polygon of interest; the ring is implicitly closed and may carry holes."""

    model_config = ConfigDict(frozen=True)

    id: str
    ring: List[GeoPoint]
    kind: AreaKind = AreaKind.PROTECTED
    holes: List[List[GeoPoint]] = Field(default_factory=list)

    @field_validator("ring")
    @classmethod
    def _open_ring(cls, ring: List[GeoPoint]) -> List[GeoPoint]:
        if len(ring) > 1 and ring[0] == ring[-1]:
            ring = ring[:-1]
        if len(ring) < 3:
            raise ValueError(f"a polygon needs at least 3 vertices, got {len(ring)}")
        return ring

    @property
    def bounds(self) -> BBox:
        lons = [p.lon for p in self.ring]
        lats = [p.lat for p in self.ring]
        return (min(lons), min(lats), max(lons), max(lats))

    def edges(self):
        for ring in (self.ring, *self.holes):
            n = len(ring)
            for i in range(n):
                a, b = ring[i], ring[(i + 1) % n]
                yield a.lon, a.lat, b.lon, b.lat

    def contains(self, lon: float, lat: float) -> bool:
        """Boundary points count as inside, including hole boundaries."""
        if not point_in_ring(lon, lat, self.ring):
            return False
        for hole in self.holes:
            if point_in_ring(lon, lat, hole) and not on_ring_boundary(lon, lat, hole):
                return False
        return True


class Port(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    pos: GeoPoint
    radius_m: float = Field(default=2000.0, gt=0)


def _on_segment(px: float, py: float, ax: float, ay: float, bx: float, by: float) -> bool:
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    scale = max(1.0, abs(bx - ax) + abs(by - ay))
    if abs(cross) > _EPS * scale:
        return False
    return min(ax, bx) - _EPS <= px <= max(ax, bx) + _EPS and min(ay, by) - _EPS <= py <= max(ay, by) + _EPS


def on_ring_boundary(px: float, py: float, ring: Sequence[GeoPoint]) -> bool:
    n = len(ring)
    return any(
        _on_segment(px, py, ring[i].lon, ring[i].lat, ring[(i + 1) % n].lon, ring[(i + 1) % n].lat)
        for i in range(n)
    )


def point_in_ring(px: float, py: float, ring: Sequence[GeoPoint]) -> bool:
    """Ray crossings test with a horizontal ray towards +lon."""
    if on_ring_boundary(px, py, ring):
        return True
    inside = False
    n = len(ring)
    j = n - 1
    for i in range(n):
        xi, yi = ring[i].lon, ring[i].lat
        xj, yj = ring[j].lon, ring[j].lat
        if (yi > py) != (yj > py):
            x_cross = xi + (py - yi) * (xj - xi) / (yj - yi)
            if px < x_cross:
                inside = not inside
        j = i
    return inside


def segment_hits_rect(x1: float, y1: float, x2: float, y2: float, rect: BBox) -> bool:
    """Liang-Barsky clip of a segment against a closed rectangle."""
    xmin, ymin, xmax, ymax = rect
    dx, dy = x2 - x1, y2 - y1
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, x1 - xmin), (dx, xmax - x1), (-dy, y1 - ymin), (dy, ymax - y1)):
        if p == 0.0:
            if q < 0.0:
                return False
            continue
        r = q / p
        if p < 0.0:
            if r > t1:
                return False
            t0 = max(t0, r)
        else:
            if r < t0:
                return False
            t1 = min(t1, r)
    return t0 <= t1


def polygon_overlaps_rect(poly: AreaPolygon, rect: BBox) -> bool:
    """Exact overlap of a polygon with a closed rectangle."""
    pb = poly.bounds
    if pb[2] < rect[0] or pb[0] > rect[2] or pb[3] < rect[1] or pb[1] > rect[3]:
        return False
    if any(segment_hits_rect(x1, y1, x2, y2, rect) for x1, y1, x2, y2 in poly.edges()):
        return True
    # no edge crosses the rectangle: either it lies wholly inside the polygon or outside
    return poly.contains((rect[0] + rect[2]) / 2.0, (rect[1] + rect[3]) / 2.0)


# --------------------------------------------------------------------------- #
# loaders
# --------------------------------------------------------------------------- #
def _ring(coords) -> List[GeoPoint]:
    return [GeoPoint(lon=float(c[0]), lat=float(c[1])) for c in coords]


def load_areas(path: Union[str, Path]) -> List[AreaPolygon]:
    """Polygon and MultiPolygon features of a GeoJSON file; id and kind come from properties."""
    with open(path, encoding="utf-8") as fh:
        doc = geojson.load(fh)
    features = doc["features"] if doc.get("type") == "FeatureCollection" else [doc]
    areas: List[AreaPolygon] = []
    for n, feat in enumerate(features):
        props = feat.get("properties") or {}
        geom = feat.get("geometry") or {}
        area_id = str(props.get("id", feat.get("id", n)))
        kind = props.get("kind", AreaKind.PROTECTED.value)
        if geom.get("type") == "Polygon":
            polys = [geom["coordinates"]]
        elif geom.get("type") == "MultiPolygon":
            polys = geom["coordinates"]
        else:
            logger.warning("area %s: skipping %s geometry", area_id, geom.get("type"))
            continue
        for k, rings in enumerate(polys):
            pid = area_id if len(polys) == 1 else f"{area_id}#{k}"
            areas.append(
                AreaPolygon(id=pid, kind=kind, ring=_ring(rings[0]), holes=[_ring(h) for h in rings[1:]])
            )
    logger.info("loaded %d areas from %s", len(areas), path)
    return areas


def load_ports(path: Union[str, Path], default_radius_m: float = 2000.0) -> List[Port]:
    """CSV <id, lon, lat[, radius_m]> with a header row."""
    ports: List[Port] = []
    with open(path, encoding="utf-8", newline="") as fh:
        for n, row in enumerate(csv.DictReader(fh), start=2):
            try:
                radius = row.get("radius_m") or default_radius_m
                ports.append(
                    Port(
                        id=str(row["id"]),
                        pos=GeoPoint(lon=float(row["lon"]), lat=float(row["lat"])),
                        radius_m=float(radius),
                    )
                )
            except (KeyError, TypeError, ValueError) as e:
                raise MalformedRecordError(f"{path}:{n}: {e}") from e
    logger.info("loaded %d ports from %s", len(ports), path)
    return ports


def dump_ports(ports: Sequence[Port], path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "lon", "lat", "radius_m"])
        for p in ports:
            w.writerow([p.id, p.pos.lon, p.pos.lat, p.radius_m])


def dump_areas(areas: Sequence[AreaPolygon], path: Union[str, Path]) -> None:
    features = []
    for a in areas:
        rings = [[p.as_tuple() for p in (*a.ring, a.ring[0])]]
        rings += [[p.as_tuple() for p in (*h, h[0])] for h in a.holes]
        features.append(geojson.Feature(id=a.id, geometry=geojson.Polygon(rings), properties={"id": a.id, "kind": a.kind.value}))
    with open(path, "w", encoding="utf-8") as fh:
        geojson.dump(geojson.FeatureCollection(features), fh)
