import math

import pytest

from geostream.errors import EqualTimestampsError
from geostream.geo import (
    GeoPoint,
    destination,
    haversine,
    heading_delta,
    initial_bearing,
    knots_to_mps,
    mps_to_knots,
    normalize_heading,
    signed_heading_delta,
    velocity_between,
)


def P(lon, lat):
    return GeoPoint(lon=lon, lat=lat)


@pytest.mark.parametrize(
    "a, b, expected, tol",
    [
        ((0, 0), (0, 0), 0.0, 1e-9),
        ((0, 0), (1, 0), 111_195.0, 1.0),
        ((0, 0), (180, 0), 20_015_087.0, 10.0),
    ],
)
def test_haversine_known_distances(a, b, expected, tol):
    assert haversine(P(*a), P(*b)) == pytest.approx(expected, abs=tol)


def test_haversine_is_symmetric():
    a, b = P(23.6, 37.9), P(25.1, 35.3)
    assert haversine(a, b) == haversine(b, a)


def test_velocity_one_knot_north():
    start = P(0.0, 0.0)
    end = destination(start, 0.0, 1852.0)
    v = velocity_between(start, 0, end, 3600)
    assert v.speed == pytest.approx(1.0, abs=0.01)
    assert v.heading == pytest.approx(0.0, abs=0.5) or v.heading == pytest.approx(360.0, abs=0.5)


def test_velocity_two_knots_east():
    start = P(0.0, 0.0)
    end = destination(start, 90.0, 1852.0)
    v = velocity_between(start, 0, end, 1800)
    assert v.speed == pytest.approx(2.0, abs=0.01)
    assert v.heading == pytest.approx(90.0, abs=0.5)


def test_velocity_zero_displacement_has_heading_zero():
    v = velocity_between(P(24, 37), 0, P(24, 37), 60)
    assert v.speed == 0.0
    assert v.heading == 0.0


def test_velocity_equal_timestamps_raises():
    with pytest.raises(EqualTimestampsError):
        velocity_between(P(24, 37), 10, P(24.1, 37), 10)


@pytest.mark.parametrize("h1, h2, expected", [(10, 10, 0), (350, 5, 15), (0, 180, 180), (-90, 270, 0), (720, 1, 1)])
def test_heading_delta(h1, h2, expected):
    assert heading_delta(h1, h2) == pytest.approx(expected)


@pytest.mark.parametrize("h1, h2, expected", [(350, 5, 15), (5, 350, -15), (0, 180, 180), (90, 45, -45)])
def test_signed_heading_delta(h1, h2, expected):
    assert signed_heading_delta(h1, h2) == pytest.approx(expected)


def test_normalize_heading_wraps_into_range():
    assert normalize_heading(-1e-15) == 0.0 or normalize_heading(-1e-15) < 360.0
    assert normalize_heading(725.0) == pytest.approx(5.0)


def test_destination_and_bearing_agree():
    start = P(24.0, 37.0)
    end = destination(start, 63.0, 10_000.0)
    assert haversine(start, end) == pytest.approx(10_000.0, rel=1e-9)
    assert initial_bearing(start, end) == pytest.approx(63.0, abs=1e-6)


def test_knot_conversions_round_trip():
    assert knots_to_mps(1.0) == pytest.approx(1852.0 / 3600.0)
    assert mps_to_knots(knots_to_mps(17.3)) == pytest.approx(17.3)
    assert not math.isnan(mps_to_knots(0.0))
