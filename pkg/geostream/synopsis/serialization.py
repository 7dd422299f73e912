"""
serialization.py – pluggable converters that turn pipeline outputs into flat
records (CSV / JSON-lines rows) and GeoJSON features. Uses
functools.singledispatch so new output types register with *one* decorator
instead of editing the exporters.
"""

from __future__ import annotations

import functools
from collections import Counter
from enum import Enum
from typing import Any, Dict

import geojson
from pydantic import BaseModel

from geostream.tracking.critical_point import CriticalPoint

CSV_FIELDS = ("MMSI", "t_start", "t_end", "lon", "lat", "event_type", "speed", "heading")


def jsonable(x: Any) -> Any:
    """Recursively convert objects to JSON-friendly representations."""
    if isinstance(x, BaseModel):
        return x.model_dump(mode="json")
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, (list, tuple, set)):
        return [jsonable(i) for i in x]
    if isinstance(x, (dict, Counter)):
        return {(k.value if isinstance(k, Enum) else str(k)): jsonable(v) for k, v in x.items()}
    if isinstance(x, bytes):
        return x.decode("utf-8")
    if isinstance(x, float) and x != x:
        return None
    return x


# --------------------------- Registries ------------------------------------ #
@functools.singledispatch
def to_record(obj: Any) -> Dict[str, Any]:
    raise TypeError(f"No record serialiser registered for {type(obj)}")


@functools.singledispatch
def to_feature(obj: Any) -> geojson.Feature:
    raise TypeError(f"No GeoJSON serialiser registered for {type(obj)}")


# --------------------- Concrete registrations ------------------------------ #
@to_record.register
def _(cp: CriticalPoint) -> Dict[str, Any]:
    return {
        "MMSI": cp.mmsi,
        "t_start": cp.t_start,
        "t_end": cp.t_end,
        "lon": cp.pos.lon,
        "lat": cp.pos.lat,
        "event_type": cp.annotation.value,
        "speed": cp.velocity.speed,
        "heading": cp.velocity.heading,
    }


@to_feature.register
def _(cp: CriticalPoint) -> geojson.Feature:
    props = to_record(cp)
    del props["lon"], props["lat"]
    return geojson.Feature(geometry=geojson.Point((cp.pos.lon, cp.pos.lat)), properties=props)


def critical_point_from_record(row: Dict[str, Any]) -> CriticalPoint:
    """Inverse of to_record() for CSV rows (all values may be strings)."""
    return CriticalPoint.model_validate(
        {
            "mmsi": int(row["MMSI"]),
            "t_start": int(row["t_start"]),
            "t_end": int(row["t_end"]),
            "pos": {"lon": float(row["lon"]), "lat": float(row["lat"])},
            "annotation": row["event_type"],
            "velocity": {"speed": float(row["speed"]), "heading": float(row["heading"])},
        }
    )
