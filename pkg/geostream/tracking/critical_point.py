from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from geostream.geo import GeoPoint, Timestamp, VelocityVector


class Annotation(str, Enum):
    STOPPED = "stopped"
    GAP_START = "gapStart"
    GAP_END = "gapEnd"
    TURN = "turn"
    SPEED_CHANGE = "speedChange"
    LOW_SPEED_START = "lowSpeedStart"
    LOW_SPEED_END = "lowSpeedEnd"


class CriticalPoint(BaseModel):
    """
    An annotated synopsis point. Only a stop spans time; every other
    annotation marks a single instant.
    """

    model_config = ConfigDict(frozen=True)

    mmsi: int = Field(gt=0)
    t_start: Timestamp
    t_end: Timestamp
    pos: GeoPoint
    annotation: Annotation
    velocity: VelocityVector = VelocityVector()

    @model_validator(mode="after")
    def _check_span(self) -> "CriticalPoint":
        if self.t_start > self.t_end:
            raise ValueError(f"t_start {self.t_start} is after t_end {self.t_end}")
        if self.t_start < self.t_end and self.annotation is not Annotation.STOPPED:
            raise ValueError(f"only stopped points may span time, got {self.annotation.value}")
        return self

    @property
    def tau(self) -> int:
        return self.t_start

    def sort_key(self) -> tuple[int, int, str]:
        return (self.t_start, self.mmsi, self.annotation.value)
