"""
sources.py – decoded AIS positions from CSV files <mmsi, lon, lat, tau>.

The header row is optional. Malformed lines are skipped and counted rather
than aborting a replay.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Iterable, Iterator, List, Union

from pydantic import ValidationError

from geostream.errors import MalformedRecordError
from geostream.tracking.position_report import PositionReport

logger = logging.getLogger(__name__)

HEADER = ("mmsi", "lon", "lat", "tau")


def parse_position(fields: List[str]) -> PositionReport:
    if len(fields) < 4:
        raise MalformedRecordError(f"expected 4 fields, got {len(fields)}")
    try:
        return PositionReport.of(int(fields[0]), float(fields[1]), float(fields[2]), int(fields[3]))
    except (ValueError, ValidationError) as e:
        raise MalformedRecordError(str(e)) from e


class CsvPositionSource:
    """Iterable over the reports of a CSV file in arrival (file) order."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.malformed = 0
        self.read = 0

    def __iter__(self) -> Iterator[PositionReport]:
        with self.path.open("rb") as fh:
            for n, raw in enumerate(fh, start=1):
                try:
                    line = raw.decode("utf-8")
                except UnicodeDecodeError as e:
                    self._skip(n, MalformedRecordError(f"not UTF-8: {e.reason} at byte {e.start}"))
                    continue
                fields = next(csv.reader([line]), [])
                if not fields or (n == 1 and fields[0].strip().lower() == HEADER[0]):
                    continue
                try:
                    report = parse_position([f.strip() for f in fields])
                except MalformedRecordError as e:
                    self._skip(n, e)
                    continue
                self.read += 1
                yield report

    def _skip(self, n: int, e: MalformedRecordError) -> None:
        self.malformed += 1
        logger.warning("%s:%d skipped: %s", self.path, n, e)


def write_positions(reports: Iterable[PositionReport], path: Union[str, Path]) -> int:
    count = 0
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        for r in reports:
            w.writerow((r.mmsi, r.pos.lon, r.pos.lat, r.tau))
            count += 1
    return count
