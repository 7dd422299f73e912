"""
geo.py – spherical-earth distance and kinematics shared by every stage.

All functions are pure and safe to call from any thread.
"""

from __future__ import annotations

import math
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, field_validator

from geostream.errors import EqualTimestampsError

EARTH_RADIUS_M = 6_371_000.0
METERS_PER_NM = 1852.0
MPS_PER_KNOT = METERS_PER_NM / 3600.0

Timestamp = Annotated[int, Field(ge=0)]


class GeoPoint(BaseModel):
    """A WGS84 coordinate pair in degrees."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    lon: float = Field(ge=-180.0, le=180.0)
    lat: float = Field(ge=-90.0, le=90.0)

    def as_tuple(self) -> tuple[float, float]:
        return (self.lon, self.lat)


class VelocityVector(BaseModel):
    """Speed over ground in knots and course in degrees clockwise from north."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    speed: float = Field(default=0.0, ge=0.0)
    heading: float = 0.0

    @field_validator("heading")
    @classmethod
    def _normalize_heading(cls, v: float) -> float:
        return normalize_heading(v)


def normalize_heading(h: float) -> float:
    h = math.fmod(h, 360.0)
    if h < 0.0:
        h += 360.0
    # fmod of a tiny negative can round up to exactly 360
    return 0.0 if h >= 360.0 else h


def mps_to_knots(v: float) -> float:
    return v / MPS_PER_KNOT


def knots_to_mps(v: float) -> float:
    return v * MPS_PER_KNOT


def haversine(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in meters."""
    return haversine_lonlat(a.lon, a.lat, b.lon, b.lat)


def haversine_lonlat(lon1: float, lat1: float, lon2: float, lat2: float) -> float:
    """Same as haversine() on bare floats, for hot loops and vectorless callers."""
    phi1 = math.radians(lat1)
    phi2 = math.radians(lat2)
    dphi = phi2 - phi1
    dlmb = math.radians(lon2 - lon1)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlmb / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * math.asin(math.sqrt(min(1.0, h)))


def initial_bearing(a: GeoPoint, b: GeoPoint) -> float:
    """Initial great-circle bearing from a to b, in [0, 360)."""
    return initial_bearing_lonlat(a.lon, a.lat, b.lon, b.lat)


def initial_bearing_lonlat(lon1: float, lat1: float, lon2: float, lat2: float) -> float:
    phi1 = math.radians(lat1)
    phi2 = math.radians(lat2)
    dlmb = math.radians(lon2 - lon1)
    x = math.sin(dlmb) * math.cos(phi2)
    y = math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlmb)
    if x == 0.0 and y == 0.0:
        return 0.0
    return normalize_heading(math.degrees(math.atan2(x, y)))


def velocity_between(p1: GeoPoint, t1: int, p2: GeoPoint, t2: int) -> VelocityVector:
    """
    Velocity implied by moving from p1 at t1 to p2 at t2.

    A zero displacement yields heading 0; the tracker carries the previous
    heading forward in that case.
    """
    if t2 == t1:
        raise EqualTimestampsError(f"cannot derive a velocity from two positions at t={t1}")
    dist = haversine(p1, p2)
    speed = mps_to_knots(dist / abs(t2 - t1))
    heading = initial_bearing(p1, p2) if dist > 0.0 else 0.0
    return VelocityVector(speed=speed, heading=heading)


def heading_delta(h1: float, h2: float) -> float:
    """Smallest absolute angle between two headings, in [0, 180]."""
    d = abs(math.fmod(h2 - h1, 360.0))
    return 360.0 - d if d > 180.0 else d


def signed_heading_delta(h1: float, h2: float) -> float:
    """Turn from h1 to h2 in (-180, 180]; positive is clockwise."""
    d = math.fmod(h2 - h1, 360.0)
    if d > 180.0:
        d -= 360.0
    elif d <= -180.0:
        d += 360.0
    return d


def destination_lonlat(lon: float, lat: float, bearing_deg: float, distance_m: float) -> tuple[float, float]:
    """Point reached after distance_m along the great circle leaving at bearing_deg."""
    delta = distance_m / EARTH_RADIUS_M
    theta = math.radians(bearing_deg)
    phi1 = math.radians(lat)
    lmb1 = math.radians(lon)
    sin_phi2 = math.sin(phi1) * math.cos(delta) + math.cos(phi1) * math.sin(delta) * math.cos(theta)
    phi2 = math.asin(max(-1.0, min(1.0, sin_phi2)))
    lmb2 = lmb1 + math.atan2(
        math.sin(theta) * math.sin(delta) * math.cos(phi1),
        math.cos(delta) - math.sin(phi1) * sin_phi2,
    )
    lon2 = (math.degrees(lmb2) + 540.0) % 360.0 - 180.0
    return lon2, math.degrees(phi2)


def destination(p: GeoPoint, bearing_deg: float, distance_m: float) -> GeoPoint:
    lon, lat = destination_lonlat(p.lon, p.lat, bearing_deg, distance_m)
    return GeoPoint(lon=lon, lat=lat)
