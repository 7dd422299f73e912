import pytest

from geostream.config import Partitioning
from geostream.geo import GeoPoint
from geostream.recognition.event_instance import EventInstance
from geostream.runtime.partition import partition, shard_of_vessel, stable_hash
from geostream.spatial.geometry import GridConfig
from geostream.spatial.grid_index import GridIndex
from geostream.tracking.position_report import PositionReport


@pytest.mark.parametrize("mmsi, shard", [(237000001, 6), (237000002, 11), (237000003, 2)])
def test_vessel_hash_is_stable_across_processes(mmsi, shard):
    # md5 of the decimal id, modulo 16 is its last hex digit
    assert shard_of_vessel(mmsi, 16) == shard
    assert stable_hash(mmsi) == stable_hash(mmsi)


def test_single_shard_takes_everything():
    assert {shard_of_vessel(m, 1) for m in range(1, 200)} == {0}


def test_reports_and_events_of_a_vessel_meet_on_one_shard():
    report = PositionReport.of(237000002, 24.0, 37.0, 100)
    event = EventInstance(name="turn", args=(237000002,), tau=100, pos=report.pos)
    assert partition(report, 4) == partition(event, 4) == shard_of_vessel(237000002, 4)


def test_sub_grid_routes_events_by_cell():
    grid = GridIndex(GridConfig(nx=12, ny=12))
    west = EventInstance(name="turn", args=(237000002,), tau=100, pos=GeoPoint(lon=19.1, lat=37.0))
    east = EventInstance(name="turn", args=(237000002,), tau=160, pos=GeoPoint(lon=29.9, lat=37.0))
    assert partition(west, 4, Partitioning.SUB_GRID, grid) == 0
    assert partition(east, 4, Partitioning.SUB_GRID, grid) == 3
    # reports always follow the vessel
    report = PositionReport.of(237000002, 29.9, 37.0, 160)
    assert partition(report, 4, Partitioning.SUB_GRID, grid) == shard_of_vessel(237000002, 4)


def test_cells_go_to_their_owner():
    grid = GridIndex(GridConfig(nx=12, ny=12))
    assert [partition((ix, 5), 4, Partitioning.MMSI_HASH, grid) for ix in (0, 3, 6, 11)] == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        partition((0, 0), 4)


def test_unknown_items_cannot_be_routed():
    with pytest.raises(TypeError):
        partition("237000001", 4)
