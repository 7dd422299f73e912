"""
grid_index.py – equal-cell grid over the surveillance area.

Areas and ports are assigned off-line to the cells they overlap. Vessel
positions are assigned to cells before every recognition query; proximity
questions then only look at the vessel's own cell and its neighbours.
"""

from __future__ import annotations

import bisect
import logging
import math
from collections import defaultdict
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from geostream.errors import GeometryOutOfBoundsError, UnknownVesselError
from geostream.geo import GeoPoint, haversine, heading_delta, initial_bearing
from geostream.spatial.geometry import AreaPolygon, CellId, GridConfig, Port, polygon_overlaps_rect

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


def cell_of(p: GeoPoint, cfg: GridConfig) -> CellId:
    """Cell holding p; points off the grid are clamped onto the border cells."""
    ix, iy = _cell_xy(p.lon, p.lat, cfg)
    return CellId(ix=ix, iy=iy)


def _cell_xy(lon: float, lat: float, cfg: GridConfig) -> Cell:
    min_lon, min_lat, max_lon, max_lat = cfg.bbox
    ix = math.floor((lon - min_lon) * cfg.nx / (max_lon - min_lon))
    iy = math.floor((lat - min_lat) * cfg.ny / (max_lat - min_lat))
    return (min(max(ix, 0), cfg.nx - 1), min(max(iy, 0), cfg.ny - 1))


def owner_of(cell: Cell, shard_count: int, cfg: GridConfig) -> int:
    """Shard owning a cell: contiguous column strips handed out round-robin."""
    if shard_count <= 1:
        return 0
    strip = max(1, math.ceil(cfg.nx / shard_count))
    return (cell[0] // strip) % shard_count


class VesselSnapshot:
    """Vessel positions and cell occupancy as of one query time."""

    __slots__ = ("q", "positions", "cells", "by_cell")

    def __init__(self, q: int, positions: Mapping[int, GeoPoint], cfg: GridConfig):
        self.q = q
        self.positions: Dict[int, GeoPoint] = dict(positions)
        self.cells: Dict[int, Cell] = {}
        self.by_cell: Dict[Cell, List[int]] = defaultdict(list)
        for mmsi in sorted(self.positions):
            p = self.positions[mmsi]
            c = _cell_xy(p.lon, p.lat, cfg)
            self.cells[mmsi] = c
            self.by_cell[c].append(mmsi)


class GridIndex:
    def __init__(self, cfg: GridConfig, max_snapshots: int = 64):
        self.cfg = cfg
        self.areas: Dict[str, AreaPolygon] = {}
        self.ports: List[Port] = []
        self.area_cells: Dict[Cell, List[str]] = defaultdict(list)
        self.port_cells: Dict[Cell, List[int]] = defaultdict(list)
        self.port_ring = 1
        self.max_snapshots = max(1, max_snapshots)
        self._snapshots: List[VesselSnapshot] = []
        self._snapshot_qs: List[int] = []

    # ------------------------------------------------------------------
    # off-line construction
    # ------------------------------------------------------------------
    @classmethod
    def build(cls, areas: Iterable[AreaPolygon], ports: Iterable[Port], cfg: GridConfig, max_snapshots: int = 64) -> "GridIndex":
        index = cls(cfg, max_snapshots=max_snapshots)
        for area in areas:
            index._add_area(area)
        for port in ports:
            index._add_port(port)
        logger.info(
            "grid %dx%d: %d areas over %d cells, %d ports",
            cfg.nx, cfg.ny, len(index.areas), len(index.area_cells), len(index.ports),
        )
        return index

    def _add_area(self, area: AreaPolygon) -> None:
        b = area.bounds
        if not (self.cfg.contains(b[0], b[1]) and self.cfg.contains(b[2], b[3])):
            raise GeometryOutOfBoundsError(f"area {area.id} bounds {b} leave the grid {self.cfg.bbox}")
        self.areas[area.id] = area
        x0, y0 = _cell_xy(b[0], b[1], self.cfg)
        x1, y1 = _cell_xy(b[2], b[3], self.cfg)
        # widen by one so polygons touching a cell edge from the lower side are kept
        for ix in range(max(0, x0 - 1), min(self.cfg.nx - 1, x1 + 1) + 1):
            for iy in range(max(0, y0 - 1), min(self.cfg.ny - 1, y1 + 1) + 1):
                if polygon_overlaps_rect(area, self.cfg.cell_bounds(ix, iy)):
                    self.area_cells[(ix, iy)].append(area.id)

    def _add_port(self, port: Port) -> None:
        if not self.cfg.contains(port.pos.lon, port.pos.lat):
            raise GeometryOutOfBoundsError(f"port {port.id} at {port.pos.as_tuple()} is off the grid")
        self.port_cells[_cell_xy(port.pos.lon, port.pos.lat, self.cfg)].append(len(self.ports))
        self.ports.append(port)
        self.port_ring = max(self.port_ring, self.ring_for(port.radius_m))

    def ring_for(self, radius_m: float) -> int:
        """Neighbour ring wide enough that no answer depends on the cell size."""
        # great-circle legs run slightly shorter than the matching parallel arc
        return max(1, math.ceil(radius_m * 1.001 / self.cfg.min_cell_side_m()))

    def _around(self, c: Cell, ring: int) -> Iterable[Cell]:
        ix, iy = c
        for x in range(max(0, ix - ring), min(self.cfg.nx - 1, ix + ring) + 1):
            for y in range(max(0, iy - ring), min(self.cfg.ny - 1, iy + ring) + 1):
                yield (x, y)

    # ------------------------------------------------------------------
    # static geometry queries
    # ------------------------------------------------------------------
    def cell_of(self, p: GeoPoint) -> CellId:
        return cell_of(p, self.cfg)

    def cell_xy(self, p: GeoPoint) -> Cell:
        return _cell_xy(p.lon, p.lat, self.cfg)

    def in_area(self, p: GeoPoint) -> List[str]:
        """Ids of the areas containing p, sorted."""
        c = _cell_xy(p.lon, p.lat, self.cfg)
        return sorted(a for a in self.area_cells.get(c, ()) if self.areas[a].contains(p.lon, p.lat))

    def near_ports(self, p: GeoPoint) -> bool:
        c = _cell_xy(p.lon, p.lat, self.cfg)
        for cell in self._around(c, self.port_ring):
            for i in self.port_cells.get(cell, ()):
                port = self.ports[i]
                if haversine(p, port.pos) <= port.radius_m:
                    return True
        return False

    def owner_of(self, cell: Cell, shard_count: int) -> int:
        return owner_of(cell, shard_count, self.cfg)

    # ------------------------------------------------------------------
    # vessel snapshots
    # ------------------------------------------------------------------
    def refresh_vessels(self, q: int, positions: Mapping[int, GeoPoint]) -> VesselSnapshot:
        """Swap in the vessel-cell assignment for query time q."""
        snap = VesselSnapshot(q, positions, self.cfg)
        if self._snapshot_qs and q <= self._snapshot_qs[-1]:
            # re-running a query time replaces its snapshot
            i = bisect.bisect_left(self._snapshot_qs, q)
            del self._snapshots[i:], self._snapshot_qs[i:]
        self._snapshots.append(snap)
        self._snapshot_qs.append(q)
        if len(self._snapshots) > self.max_snapshots:
            del self._snapshots[0], self._snapshot_qs[0]
        return snap

    def snapshot(self, at: Optional[int] = None) -> Optional[VesselSnapshot]:
        """Snapshot of the first query at or after `at`; the newest one otherwise."""
        if not self._snapshots:
            return None
        if at is None:
            return self._snapshots[-1]
        i = bisect.bisect_left(self._snapshot_qs, at)
        return self._snapshots[min(i, len(self._snapshots) - 1)]

    def _position(self, snap: Optional[VesselSnapshot], v: int) -> GeoPoint:
        if snap is None or v not in snap.positions:
            raise UnknownVesselError(v)
        return snap.positions[v]

    def nearby_vessels(self, v: int, radius_m: float, at: Optional[int] = None) -> List[Tuple[int, GeoPoint]]:
        """Other vessels within radius_m of v, ordered by vessel id."""
        snap = self.snapshot(at)
        here = self._position(snap, v)
        out: List[Tuple[int, GeoPoint]] = []
        for cell in self._around(snap.cells[v], self.ring_for(radius_m)):
            for other in snap.by_cell.get(cell, ()):
                if other == v:
                    continue
                pos = snap.positions[other]
                if haversine(here, pos) <= radius_m:
                    out.append((other, pos))
        out.sort(key=lambda t: t[0])
        return out

    def heading_to_vessels(
        self,
        v: int,
        heading: float,
        cone_deg: float = 30.0,
        radius_m: float = 5000.0,
        at: Optional[int] = None,
    ) -> bool:
        """True when some nearby vessel lies within cone_deg/2 of v's heading."""
        here = self._position(self.snapshot(at), v)
        half = cone_deg / 2.0
        return any(
            heading_delta(initial_bearing(here, pos), heading) <= half
            for _, pos in self.nearby_vessels(v, radius_m, at=at)
        )


def build(areas: Sequence[AreaPolygon], ports: Sequence[Port], cfg: GridConfig) -> GridIndex:
    return GridIndex.build(areas, ports, cfg)
