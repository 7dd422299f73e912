"""
vessel_state.py – rolling per-vessel memory used by the noise filter and the
mobility tracker.

A VesselState is owned by exactly one tracker at a time. It is plain Python
so it pickles cheaply when shards move between processes.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from enum import Enum, IntFlag
from typing import Deque, List, Optional, Tuple

from geostream.geo import GeoPoint, VelocityVector, normalize_heading
from geostream.tracking.position_report import PositionReport


class InstantFlags(IntFlag):
    """Bitmap attached to every accepted position."""

    NONE = 0
    PAUSE = 1
    SPEED_CHANGE = 2
    TURN = 4


class PointClass(str, Enum):
    """How a raw position ends up being characterised once the run is over."""

    NORMAL = "normal"
    NOISE = "noise"
    GAP = "gap"
    STOP = "stop"
    TURN = "turn"
    SPEED_CHANGE = "speedChange"
    LOW_SPEED = "lowSpeed"


class BufferedPoint:
    __slots__ = ("report", "velocity", "flags", "turn_delta", "label", "critical")

    def __init__(self, report: PositionReport, velocity: Optional[VelocityVector] = None):
        self.report = report
        # velocity of the segment that ends here
        self.velocity = velocity
        self.flags = InstantFlags.NONE
        # heading change at this point, known once the next segment arrives
        self.turn_delta = 0.0
        self.label: Optional[PointClass] = None
        self.critical = False

    @property
    def tau(self) -> int:
        return self.report.tau

    @property
    def pos(self) -> GeoPoint:
        return self.report.pos

    @property
    def speed(self) -> float:
        return self.velocity.speed if self.velocity is not None else 0.0

    def __repr__(self) -> str:
        return f"BufferedPoint(tau={self.tau}, flags={self.flags!r}, label={self.label})"


class _Checkpoint:
    """Everything one update changed, so the latest accepted point can be retracted."""

    __slots__ = ("point", "evicted", "run", "run_len", "run_lead", "turn_reset_tau", "marks", "emitted")

    def __init__(self, point, evicted, run, run_len, run_lead, turn_reset_tau):
        self.point = point
        self.evicted = evicted
        self.run = run
        self.run_len = run_len
        self.run_lead = run_lead
        self.turn_reset_tau = turn_reset_tau
        # (point, label, critical, turn_delta) as they were before the update touched them
        self.marks: List[Tuple[BufferedPoint, Optional[PointClass], bool, float]] = []
        self.emitted: List = []


def mean_velocity(points: List[BufferedPoint]) -> Optional[VelocityVector]:
    """
    Mean speed plus the speed-weighted circular mean of headings.
    Returns None when no point carries a velocity yet.
    """
    speeds = 0.0
    sx = sy = 0.0
    n = 0
    for p in points:
        v = p.velocity
        if v is None:
            continue
        n += 1
        speeds += v.speed
        rad = math.radians(v.heading)
        w = v.speed if v.speed > 0.0 else 1e-9
        sx += w * math.sin(rad)
        sy += w * math.cos(rad)
    if n == 0:
        return None
    heading = normalize_heading(math.degrees(math.atan2(sx, sy))) if (sx or sy) else 0.0
    return VelocityVector(speed=speeds / n, heading=heading)


class VesselState:
    """Ring buffer of the last m accepted reports plus event bookkeeping."""

    def __init__(self, mmsi: int, m_window: int, keep_raw: bool = False):
        self.mmsi = mmsi
        self.buffer: Deque[BufferedPoint] = deque(maxlen=m_window)
        # consecutive pause-or-turn points since the vessel last moved on,
        # and the point it arrived at just before the first of them
        self.run: List[BufferedPoint] = []
        self.run_lead: Optional[BufferedPoint] = None
        self.turn_reset_tau = -1
        self.pending: List = []
        # critical points already handed over and later withdrawn by a rollback
        self.retracted: List = []
        self.evicted = 0
        self.accepted = 0
        self.labels: Counter = Counter()
        self.raw: Optional[List[PositionReport]] = [] if keep_raw else None
        self._checkpoint: Optional[_Checkpoint] = None

    # ------------------------------------------------------------------
    # read helpers
    # ------------------------------------------------------------------
    @property
    def last(self) -> Optional[BufferedPoint]:
        return self.buffer[-1] if self.buffer else None

    @property
    def previous(self) -> Optional[BufferedPoint]:
        return self.buffer[-2] if len(self.buffer) > 1 else None

    @property
    def v_now(self) -> Optional[VelocityVector]:
        last = self.last
        return last.velocity if last is not None else None

    @property
    def v_prev(self) -> Optional[VelocityVector]:
        prev = self.previous
        return prev.velocity if prev is not None else None

    @property
    def v_m(self) -> Optional[VelocityVector]:
        """Mean velocity over the buffered points preceding the newest one."""
        return mean_velocity(list(self.buffer)[:-1])

    def history(self, retract: bool = False) -> List[BufferedPoint]:
        """
        Buffered points a new report is judged against. With retract=True the
        newest point is left out and whatever it pushed out is put back.
        """
        pts = list(self.buffer)
        if not retract:
            return pts
        cp = self._checkpoint
        pts = pts[:-1]
        if cp is not None and cp.evicted is not None:
            pts.insert(0, cp.evicted)
        return pts

    def can_retract(self) -> bool:
        cp = self._checkpoint
        return cp is not None and cp.point is self.last

    # ------------------------------------------------------------------
    # updates
    # ------------------------------------------------------------------
    def advance(self, report: PositionReport, velocity: Optional[VelocityVector]) -> BufferedPoint:
        """Append an accepted report; the previous heading is kept for a zero-length step."""
        prev = self.last
        if velocity is not None and velocity.speed == 0.0 and prev is not None and prev.velocity is not None:
            velocity = VelocityVector(speed=0.0, heading=prev.velocity.heading)
        point = BufferedPoint(report, velocity)
        evicted = self.buffer[0] if len(self.buffer) == self.buffer.maxlen else None
        self._checkpoint = _Checkpoint(point, evicted, self.run, len(self.run), self.run_lead, self.turn_reset_tau)
        if evicted is not None and not evicted.critical:
            self.evicted += 1
        self.buffer.append(point)
        self.accepted += 1
        if self.raw is not None:
            self.raw.append(report)
        return point

    def touch(self, point: BufferedPoint) -> None:
        """Remember how `point` looked before the current update changes it."""
        cp = self._checkpoint
        if cp is None or any(p is point for p, *_ in cp.marks):
            return
        cp.marks.append((point, point.label, point.critical, point.turn_delta))

    def mark_critical(self, point: BufferedPoint, cls: PointClass) -> None:
        self.touch(point)
        point.critical = True
        self.label(point, cls)

    def label(self, point: BufferedPoint, cls: PointClass) -> None:
        """First label wins; a point is characterised exactly once."""
        if point.label is None:
            self.touch(point)
            point.label = cls
            self.labels[cls] += 1

    def emit(self, points: List) -> None:
        if self._checkpoint is not None:
            self._checkpoint.emitted.extend(points)
        self.pending.extend(points)

    def rollback(self) -> BufferedPoint:
        """
        Undo the latest advance() and everything the tracker did with it.
        Critical points it produced are dropped from `pending`, or queued in
        `retracted` when they were already handed over.
        """
        if not self.can_retract():
            raise RuntimeError(f"vessel {self.mmsi}: latest point cannot be retracted")
        cp = self._checkpoint
        for point, label, critical, turn_delta in reversed(cp.marks):
            if point.label is not None and point.label != label:
                self.labels[point.label] -= 1
                if not self.labels[point.label]:
                    del self.labels[point.label]
            point.label, point.critical, point.turn_delta = label, critical, turn_delta
        for out in cp.emitted:
            kept = [p for p in self.pending if p is not out]
            if len(kept) == len(self.pending):
                self.retracted.append(out)
            self.pending = kept
        point = self.buffer.pop()
        if cp.evicted is not None:
            self.buffer.appendleft(cp.evicted)
            if not cp.evicted.critical:
                self.evicted -= 1
        if cp.run is not self.run:
            self.run = cp.run
        del self.run[cp.run_len:]
        self.run_lead = cp.run_lead
        self.turn_reset_tau = cp.turn_reset_tau
        self.accepted -= 1
        if self.raw is not None:
            self.raw.pop()
        self._checkpoint = None
        return point
