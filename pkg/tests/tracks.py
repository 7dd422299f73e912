"""Hand-built position tracks for unit tests."""

from __future__ import annotations

from typing import List, Tuple

from geostream.geo import destination_lonlat
from geostream.tracking.position_report import PositionReport

T0 = 1_600_002_000
START = (24.0, 37.0)


def sail(
    mmsi: int,
    start: Tuple[float, float] = START,
    heading: float = 90.0,
    speed_kn: float = 12.0,
    n: int = 30,
    t0: int = T0,
    period: int = 60,
) -> List[PositionReport]:
    """n reports on a great circle at constant speed, the first one at start."""
    step = speed_kn * 1852.0 / 3600.0 * period
    lon, lat = start
    out = []
    for i in range(n):
        out.append(PositionReport.of(mmsi, lon, lat, t0 + i * period))
        lon, lat = destination_lonlat(lon, lat, heading, step)
    return out


def anchor(mmsi: int, at: Tuple[float, float], n: int, t0: int, period: int = 60, swing_m: float = 3.0) -> List[PositionReport]:
    """n reports circling within swing_m of `at`."""
    out = []
    for i in range(n):
        lon, lat = destination_lonlat(at[0], at[1], (i * 90.0) % 360.0, swing_m)
        out.append(PositionReport.of(mmsi, lon, lat, t0 + i * period))
    return out


def continue_from(last: PositionReport, heading: float, speed_kn: float, n: int, period: int = 60) -> List[PositionReport]:
    """n more reports after `last`, the first one a period later."""
    track = sail(last.mmsi, last.pos.as_tuple(), heading, speed_kn, n + 1, last.tau, period)
    return track[1:]
