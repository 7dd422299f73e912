# Public re-exports
from .geometry import (
    DEFAULT_BBOX,
    AreaKind,
    AreaPolygon,
    CellId,
    GridConfig,
    Port,
    dump_areas,
    dump_ports,
    load_areas,
    load_ports,
    point_in_ring,
)
from .grid_index import GridIndex, VesselSnapshot, build, cell_of, owner_of

__all__ = [
    "DEFAULT_BBOX",
    "GridConfig",
    "CellId",
    "AreaKind",
    "AreaPolygon",
    "Port",
    "point_in_ring",
    "load_areas",
    "load_ports",
    "dump_areas",
    "dump_ports",
    "GridIndex",
    "VesselSnapshot",
    "build",
    "cell_of",
    "owner_of",
]
