"""
partition.py – deterministic routing of stream items to shards.

Position reports always go to the shard of their vessel so that one
tracker sees a vessel's whole trajectory. Movement events follow the
configured partitioning: by vessel, or by the owner of the grid cell they
happened in.
"""

from __future__ import annotations

import functools
import hashlib
from typing import Any, Optional, Tuple

from geostream.config import Partitioning
from geostream.recognition.event_instance import EventInstance
from geostream.spatial.grid_index import GridIndex
from geostream.tracking.position_report import PositionReport


def stable_hash(mmsi: int) -> int:
    """Process-independent hash; the builtin hash() is salted for str keys."""
    return int(hashlib.md5(str(mmsi).encode()).hexdigest(), 16)


def shard_of_vessel(mmsi: int, shard_count: int) -> int:
    return stable_hash(mmsi) % shard_count if shard_count > 1 else 0


@functools.singledispatch
def partition(item: Any, shard_count: int, partitioning: Partitioning = Partitioning.MMSI_HASH, grid: Optional[GridIndex] = None) -> int:
    raise TypeError(f"No partitioner registered for {type(item)}")


@partition.register
def _(item: PositionReport, shard_count: int, partitioning: Partitioning = Partitioning.MMSI_HASH, grid: Optional[GridIndex] = None) -> int:
    return shard_of_vessel(item.mmsi, shard_count)


@partition.register
def _(item: EventInstance, shard_count: int, partitioning: Partitioning = Partitioning.MMSI_HASH, grid: Optional[GridIndex] = None) -> int:
    if partitioning is Partitioning.SUB_GRID and grid is not None and item.pos is not None:
        return grid.owner_of(grid.cell_xy(item.pos), shard_count)
    return shard_of_vessel(item.vessel, shard_count)


@partition.register
def _(item: tuple, shard_count: int, partitioning: Partitioning = Partitioning.MMSI_HASH, grid: Optional[GridIndex] = None) -> int:
    """A grid cell (ix, iy) belongs to its sub-grid owner in either mode."""
    if grid is None:
        raise ValueError("routing a cell needs the grid")
    return grid.owner_of(item, shard_count)
