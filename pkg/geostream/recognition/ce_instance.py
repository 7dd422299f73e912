from __future__ import annotations

from enum import Enum
from typing import Any, Dict, Optional, Tuple

import geojson
from pydantic import BaseModel, ConfigDict, Field, model_validator

from geostream.geo import GeoPoint, Timestamp
from geostream.recognition.interval import Interval
from geostream.synopsis.serialization import to_feature, to_record


class CeConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    fast_speed_knots: float = Field(default=20.0, gt=0)
    picking_max_gap_s: int = Field(default=3600, gt=0)
    picking_max_dist_m: float = Field(default=500.0, gt=0)
    delay_speed_knots: float = Field(default=1.0, gt=0)
    approach_radius_m: float = Field(default=5000.0, gt=0)
    approach_cone_deg: float = Field(default=30.0, gt=0, le=360)


class CeName(str, Enum):
    GAP = "gap"
    SUSPICIOUS_DELAY = "suspiciousDelay"
    POSSIBLE_RENDEZVOUS = "possibleRendezvous"
    FAST_APPROACH = "fastApproach"
    POSSIBLE_PICKING = "possiblePicking"
    LOW_SPEED = "lowSpeed"


DURATIVE = frozenset({CeName.GAP, CeName.SUSPICIOUS_DELAY, CeName.POSSIBLE_RENDEZVOUS, CeName.LOW_SPEED})


class CeInstance(BaseModel):
    """A recognized complex event; durative ones hold over an interval, the rest occur at tau."""

    model_config = ConfigDict(frozen=True)

    name: CeName
    participants: Tuple[int, ...] = Field(min_length=1, max_length=2)
    interval: Optional[Interval] = None
    tau: Optional[Timestamp] = None
    pos: Optional[GeoPoint] = None
    cell: Optional[Tuple[int, int]] = None
    # query time the instance was last reported at
    q: Optional[Timestamp] = None

    @model_validator(mode="after")
    def _when_matches_kind(self) -> "CeInstance":
        if self.name in DURATIVE:
            if self.interval is None or self.tau is not None:
                raise ValueError(f"{self.name.value} holds over an interval")
        elif self.tau is None or self.interval is not None:
            raise ValueError(f"{self.name.value} occurs at a time point")
        return self

    @property
    def start(self) -> int:
        return self.interval.start if self.interval is not None else self.tau

    @property
    def end(self) -> Optional[int]:
        return self.interval.end if self.interval is not None else self.tau

    def key(self) -> tuple:
        return (self.name.value, self.participants, self.start)

    def sort_key(self) -> tuple:
        return (self.start, self.name.value, self.participants, self.cell or ())


@to_record.register
def _(ce: CeInstance) -> Dict[str, Any]:
    open_ended = ce.interval is not None and ce.interval.is_open
    return {
        "name": ce.name.value,
        "v1": ce.participants[0],
        "v2": ce.participants[1] if len(ce.participants) > 1 else None,
        "t_start": ce.start,
        "t_end": ce.q if open_ended else ce.end,
        "open": open_ended,
        "lon": ce.pos.lon if ce.pos is not None else None,
        "lat": ce.pos.lat if ce.pos is not None else None,
        "cell": f"{ce.cell[0]}:{ce.cell[1]}" if ce.cell is not None else None,
    }


@to_feature.register
def _(ce: CeInstance) -> geojson.Feature:
    props = to_record(ce)
    geom = geojson.Point((ce.pos.lon, ce.pos.lat)) if ce.pos is not None else None
    return geojson.Feature(geometry=geom, properties=props)
