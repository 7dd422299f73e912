"""
exporters.py – CSV, GeoJSON and KML documents of critical points.

Each format registers a writer with @export_format; export() looks the format
up and returns the encoded document.
"""

from __future__ import annotations

import csv
import io
import logging
from collections import defaultdict
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Sequence, Union

import geojson
import simplekml

from geostream.errors import ExportIoError, MalformedRecordError
from geostream.synopsis.serialization import CSV_FIELDS, critical_point_from_record, to_feature, to_record
from geostream.tracking.critical_point import Annotation, CriticalPoint

logger = logging.getLogger(__name__)


class ExportFormat(str, Enum):
    CSV = "csv"
    GEOJSON = "geojson"
    KML = "kml"


Writer = Callable[[Sequence[CriticalPoint]], bytes]
_writers: Dict[ExportFormat, Writer] = {}


def export_format(fmt: ExportFormat):
    """Decorator that registers a writer for an export format."""

    def decorator(fn: Writer) -> Writer:
        _writers[fmt] = fn
        return fn

    return decorator


def _iso(t: int) -> str:
    return datetime.fromtimestamp(t, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@export_format(ExportFormat.CSV)
def _write_csv(points: Sequence[CriticalPoint]) -> bytes:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for p in points:
        w.writerow(to_record(p))
    return buf.getvalue().encode("utf-8")


@export_format(ExportFormat.GEOJSON)
def _write_geojson(points: Sequence[CriticalPoint]) -> bytes:
    fc = geojson.FeatureCollection([to_feature(p) for p in points])
    return geojson.dumps(fc).encode("utf-8")


@export_format(ExportFormat.KML)
def _write_kml(points: Sequence[CriticalPoint]) -> bytes:
    kml = simplekml.Kml(name="critical points")
    by_vessel: Dict[int, List[CriticalPoint]] = defaultdict(list)
    for p in points:
        by_vessel[p.mmsi].append(p)
    for mmsi, pts in by_vessel.items():
        pts.sort(key=CriticalPoint.sort_key)
        folder = kml.newfolder(name=str(mmsi))
        for p in pts:
            pnt = folder.newpoint(
                name=p.annotation.value,
                coords=[(p.pos.lon, p.pos.lat)],
                description=f"speed {p.velocity.speed:.1f} kn, heading {p.velocity.heading:.0f}",
            )
            if p.annotation is Annotation.STOPPED:
                pnt.timespan.begin = _iso(p.t_start)
                pnt.timespan.end = _iso(p.t_end)
            else:
                pnt.timestamp.when = _iso(p.t_start)
        if len(pts) > 1:
            folder.newlinestring(name=f"{mmsi} track", coords=[(p.pos.lon, p.pos.lat) for p in pts])
    return kml.kml().encode("utf-8")


def export(points: Sequence[CriticalPoint], fmt: Union[ExportFormat, str]) -> bytes:
    fmt = ExportFormat(fmt)
    writer = _writers.get(fmt)
    if writer is None:
        raise ValueError(f"No writer registered for {fmt.value}")
    return writer(points)


def write_export(points: Sequence[CriticalPoint], fmt: Union[ExportFormat, str], path: Union[str, Path]) -> Path:
    path = Path(path)
    data = export(points, fmt)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as e:
        raise ExportIoError(f"cannot write {path}: {e}") from e
    return path


def write_per_vessel(points: Iterable[CriticalPoint], fmt: Union[ExportFormat, str], out_dir: Union[str, Path]) -> List[Path]:
    """One <mmsi>.<ext> file per vessel."""
    fmt = ExportFormat(fmt)
    by_vessel: Dict[int, List[CriticalPoint]] = defaultdict(list)
    for p in points:
        by_vessel[p.mmsi].append(p)
    return [
        write_export(sorted(pts, key=CriticalPoint.sort_key), fmt, Path(out_dir) / f"{mmsi}.{fmt.value}")
        for mmsi, pts in sorted(by_vessel.items())
    ]


def append_csv(points: Sequence[CriticalPoint], path: Union[str, Path]) -> None:
    """Append rows to a CSV export, writing the header when the file is new."""
    path = Path(path)
    try:
        new = not path.exists() or path.stat().st_size == 0
        with path.open("a", encoding="utf-8", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
            if new:
                w.writeheader()
            for p in points:
                w.writerow(to_record(p))
    except OSError as e:
        raise ExportIoError(f"cannot append to {path}: {e}") from e


def read_critical_points(source: Union[str, Path, bytes]) -> List[CriticalPoint]:
    """Parse a CSV export back into critical points (bytes or a file path)."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    else:
        text = Path(source).read_text(encoding="utf-8")
    out: List[CriticalPoint] = []
    for n, row in enumerate(csv.DictReader(io.StringIO(text)), start=2):
        try:
            out.append(critical_point_from_record(row))
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedRecordError(f"line {n}: {e}") from e
    return out
