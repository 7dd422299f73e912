from __future__ import annotations

from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, model_validator

from geostream.geo import GeoPoint, Timestamp, VelocityVector
from geostream.recognition.interval import MaximalIntervalList
from geostream.tracking.critical_point import Annotation, CriticalPoint

Arg = Union[int, str]


class FluentKey(BaseModel):
    """F(args) = value, e.g. gap(237000001) = true or in(237000001, 3:7) = true."""

    model_config = ConfigDict(frozen=True)

    name: str
    args: Tuple[Arg, ...] = ()
    value: Union[bool, str] = True

    def __str__(self) -> str:
        return f"{self.name}({', '.join(map(str, self.args))})={self.value}"


class EventInstance(BaseModel):
    """
    A timestamped event fed to recognition. Movement events carry the
    position and velocity of their critical point; a stopped event occurs at
    the end of the stop and remembers its start in `since`.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    args: Tuple[Arg, ...]
    tau: Timestamp
    pos: Optional[GeoPoint] = None
    velocity: Optional[VelocityVector] = None
    since: Optional[Timestamp] = None

    @model_validator(mode="after")
    def _since_before_tau(self) -> "EventInstance":
        if self.since is not None and self.since > self.tau:
            raise ValueError(f"event {self.name} starts at {self.since} after it occurs at {self.tau}")
        return self

    @property
    def vessel(self) -> int:
        return int(self.args[0])

    def key(self) -> tuple:
        return (self.name, self.args, self.tau)

    def sort_key(self) -> tuple:
        return (self.tau, str(self.args), self.name)

    @classmethod
    def from_critical_point(cls, cp: CriticalPoint) -> "EventInstance":
        if cp.annotation is Annotation.STOPPED:
            return cls(name=cp.annotation.value, args=(cp.mmsi,), tau=cp.t_end, since=cp.t_start, pos=cp.pos, velocity=cp.velocity)
        return cls(name=cp.annotation.value, args=(cp.mmsi,), tau=cp.t_start, pos=cp.pos, velocity=cp.velocity)


def start_end_events(fluent: FluentKey, intervals: MaximalIntervalList) -> List[EventInstance]:
    """start(F) at every interval start, end(F) at every closed interval end."""
    args = (fluent.name, *fluent.args)
    out: List[EventInstance] = []
    for iv in intervals:
        out.append(EventInstance(name="start", args=args, tau=iv.start))
        if iv.end is not None:
            out.append(EventInstance(name="end", args=args, tau=iv.end))
    return out
