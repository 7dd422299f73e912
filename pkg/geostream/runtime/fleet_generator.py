"""
fleet_generator.py – deterministic synthetic AIS fleets with a ground-truth
ledger.

Background vessels follow one of four archetypes (straight, turning,
anchoring, gappy). Planted scenarios add dedicated vessels acting out a
suspicious delay, a rendezvous, a package picking or a fast approach. The
ledger lists every planted stop, turn, gap and complex event with the exact
report times that should delimit it. Noise is only injected into background
vessels so that planted scenarios stay exact.
"""

from __future__ import annotations

import json
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from geostream.errors import InvalidSpecError
from geostream.geo import GeoPoint, destination_lonlat, initial_bearing_lonlat, haversine_lonlat, normalize_heading, signed_heading_delta
from geostream.runtime.sources import write_positions
from geostream.spatial.geometry import AreaKind, AreaPolygon, GridConfig, Port, dump_areas, dump_ports
from geostream.synopsis.serialization import jsonable
from geostream.tracking.position_report import PositionReport

logger = logging.getLogger(__name__)

M_PER_DEG = 111_195.0
MMSI_CLONE_STRIDE = 100_000


class Archetype(str, Enum):
    STRAIGHT = "straight"
    TURNING = "turning"
    ANCHORING = "anchoring"
    GAPPY = "gappy"


class SyntheticFleetSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_vessels: int = Field(default=50, ge=0)
    duration_s: int = Field(default=86_400, gt=0)
    report_period_s: int = Field(default=60, gt=0)
    start_time: int = Field(default=1_600_000_000, ge=0)
    archetypes: Dict[Archetype, float] = Field(
        default_factory=lambda: {
            Archetype.STRAIGHT: 0.4,
            Archetype.TURNING: 0.3,
            Archetype.ANCHORING: 0.2,
            Archetype.GAPPY: 0.1,
        }
    )
    speed_knots: Tuple[float, float] = (8.0, 16.0)
    gps_jitter_m: float = Field(default=5.0, ge=0)
    out_of_sequence_rate: float = Field(default=0.0, ge=0, le=1)
    off_course_rate: float = Field(default=0.0, ge=0, le=1)
    duplicate_rate: float = Field(default=0.0, ge=0, le=1)
    timestamp_conflict_rate: float = Field(default=0.0, ge=0, le=1)
    suspicious_delays: int = Field(default=0, ge=0)
    rendezvous: int = Field(default=0, ge=0)
    pickings: int = Field(default=0, ge=0)
    fast_approaches: int = Field(default=0, ge=0)
    increase_factor: int = Field(default=1, ge=1)
    n_ports: int = Field(default=6, ge=0)
    n_areas: int = Field(default=4, ge=0)
    grid: GridConfig = GridConfig()
    base_mmsi: int = Field(default=237_000_000, gt=0)

    @property
    def planted_vessels(self) -> int:
        return self.suspicious_delays + 2 * (self.rendezvous + self.pickings + self.fast_approaches)


class PlantedEvent(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    vessels: Tuple[int, ...]
    t_start: int
    t_end: int
    pos: GeoPoint
    annotations: List[str] = Field(default_factory=list)
    ce: Optional[str] = None


class SyntheticFleet(BaseModel):
    reports: List[PositionReport]
    ledger: List[PlantedEvent]
    ports: List[Port]
    areas: List[AreaPolygon]

    @property
    def vessels(self) -> List[int]:
        return sorted({r.mmsi for r in self.reports})


# ---------------------------------------------------------------------------
# kinematics
# ---------------------------------------------------------------------------
class _Track:
    """Exact positions of one vessel, reported every period unless silent."""

    def __init__(self, mmsi: int, t: int, lon: float, lat: float, period: int):
        self.mmsi = mmsi
        self.t = t
        self.lon = lon
        self.lat = lat
        self.period = period
        self.heading = 0.0
        self.points: List[Tuple[int, float, float]] = []

    def report(self) -> int:
        self.points.append((self.t, self.lon, self.lat))
        return self.t

    def step(self, speed_kn: float, heading: Optional[float] = None, silent: bool = False) -> int:
        if heading is not None:
            self.heading = normalize_heading(heading)
        self.t += self.period
        if speed_kn > 0.0:
            dist = speed_kn * 1852.0 / 3600.0 * self.period
            self.lon, self.lat = destination_lonlat(self.lon, self.lat, self.heading, dist)
        if not silent:
            self.report()
        return self.t

    def sail(self, duration_s: float, speed_kn: float, heading: Optional[float] = None, silent: bool = False) -> int:
        for _ in range(max(1, int(round(duration_s / self.period)))):
            self.step(speed_kn, heading, silent=silent)
        return self.t

    def turn(self, total_deg: float, steps: int, speed_kn: float) -> Tuple[int, int]:
        """Bend over `steps` reports; returns the times of the first and last bending vertex."""
        first, last = self.t, self.t
        for _ in range(steps):
            last = self.t
            self.step(speed_kn, self.heading + total_deg / steps)
        return first, last

    def anchor(self, duration_s: float) -> Tuple[int, int]:
        """
        Swing around the anchor; consecutive reports never repeat a position.
        The stay is timed from the report the vessel arrived with.
        """
        first = self.t
        for _ in range(max(1, int(round(duration_s / self.period)))):
            self.step(0.05, self.heading + 90.0)
        return first, self.t

    @property
    def lonlat(self) -> Tuple[float, float]:
        return (self.lon, self.lat)


class _Region:
    """The bbox, shrunk by a margin on every side."""

    def __init__(self, bbox, margin: float):
        w, h = bbox[2] - bbox[0], bbox[3] - bbox[1]
        self.min_lon = bbox[0] + margin * w
        self.max_lon = bbox[2] - margin * w
        self.min_lat = bbox[1] + margin * h
        self.max_lat = bbox[3] - margin * h

    def contains(self, lon: float, lat: float) -> bool:
        return self.min_lon <= lon <= self.max_lon and self.min_lat <= lat <= self.max_lat

    def center(self) -> Tuple[float, float]:
        return ((self.min_lon + self.max_lon) / 2.0, (self.min_lat + self.max_lat) / 2.0)

    def sample(self, rng: np.random.Generator) -> Tuple[float, float]:
        return (float(rng.uniform(self.min_lon, self.max_lon)), float(rng.uniform(self.min_lat, self.max_lat)))


class FleetGenerator:
    def __init__(self, spec: SyntheticFleetSpec, seed: int):
        self.spec = spec
        self.rng = np.random.default_rng(seed)
        bbox = spec.grid.bbox
        self.operating = _Region(bbox, 0.15)
        self.open_water = _Region(bbox, 0.06)
        self.t0 = spec.start_time
        self.t_end = spec.start_time + spec.duration_s
        self.ledger: List[PlantedEvent] = []
        self.next_mmsi = spec.base_mmsi + 1

    # -- helpers ---------------------------------------------------------
    def _mmsi(self) -> int:
        m = self.next_mmsi
        self.next_mmsi += 1
        return m

    def _speed(self) -> float:
        lo, hi = self.spec.speed_knots
        return float(self.rng.uniform(lo, hi))

    def _plant(self, kind: str, vessels, t_start: int, t_end: int, lonlat, annotations=(), ce: Optional[str] = None) -> None:
        self.ledger.append(
            PlantedEvent(
                kind=kind,
                vessels=tuple(vessels),
                t_start=t_start,
                t_end=t_end,
                pos=GeoPoint(lon=lonlat[0], lat=lonlat[1]),
                annotations=list(annotations),
                ce=ce,
            )
        )

    def _cell_center(self, lon: float, lat: float) -> Tuple[float, float]:
        g = self.spec.grid
        ix = math.floor((lon - g.bbox[0]) / g.cell_width)
        iy = math.floor((lat - g.bbox[1]) / g.cell_height)
        return (g.bbox[0] + (ix + 0.5) * g.cell_width, g.bbox[1] + (iy + 0.5) * g.cell_height)

    def _meeting_point(self) -> Tuple[float, float]:
        lon, lat = self.operating.sample(self.rng)
        return self._cell_center(lon, lat)

    def _scenario_start(self, length_s: int) -> int:
        p = self.spec.report_period_s
        latest = self.t_end - length_s
        t = int(self.rng.integers(self.t0, max(self.t0 + 1, latest)))
        return t - (t - self.t0) % p

    def _approach(self, mmsi: int, target: Tuple[float, float], heading: float, speed: float, duration_s: int, t: int) -> _Track:
        """A track that ends exactly on target after sailing duration_s on heading."""
        p = self.spec.report_period_s
        steps = max(1, int(round(duration_s / p)))
        lon, lat = destination_lonlat(target[0], target[1], heading + 180.0, speed * 1852.0 / 3600.0 * p * steps)
        track = _Track(mmsi, t, lon, lat, p)
        track.heading = heading
        track.report()
        for _ in range(steps):
            track.step(speed, initial_bearing_lonlat(track.lon, track.lat, target[0], target[1]))
        track.lon, track.lat = target
        track.points[-1] = (track.t, target[0], target[1])
        return track

    # -- background archetypes -------------------------------------------
    def _straight(self, mmsi: int) -> _Track:
        lon, lat = self.operating.sample(self.rng)
        heading = float(self.rng.uniform(0.0, 360.0))
        speed = self._speed()
        best = (0.0, heading)
        for k in range(8):
            h = (heading + 45.0 * k) % 360.0
            room = self._room(lon, lat, h)
            if room > best[0]:
                best = (room, h)
        room, heading = best
        speed = max(6.0, min(speed, room / self.spec.duration_s * 3600.0 / 1852.0))
        track = _Track(mmsi, self.t0, lon, lat, self.spec.report_period_s)
        track.heading = heading
        track.report()
        while track.t + track.period <= self.t_end:
            track.step(speed)
        return track

    def _room(self, lon: float, lat: float, heading: float) -> float:
        dist = 0.0
        while dist < 2_000_000.0:
            nlon, nlat = destination_lonlat(lon, lat, heading, dist + 10_000.0)
            if not self.open_water.contains(nlon, nlat):
                break
            dist += 10_000.0
        return dist

    def _steer(self, track: _Track) -> float:
        clon, clat = self.operating.center()
        desired = initial_bearing_lonlat(track.lon, track.lat, clon, clat) + float(self.rng.uniform(-60.0, 60.0))
        turn = signed_heading_delta(track.heading, desired)
        if abs(turn) < 30.0:
            turn = 30.0 if turn >= 0 else -30.0
        return max(-90.0, min(90.0, turn))

    def _turning(self, mmsi: int) -> _Track:
        lon, lat = self.operating.sample(self.rng)
        track = _Track(mmsi, self.t0, lon, lat, self.spec.report_period_s)
        track.heading = float(self.rng.uniform(0.0, 360.0))
        track.report()
        speed = self._speed()
        while True:
            leg = int(self.rng.uniform(3600, 3 * 3600))
            if track.t + leg + 10 * track.period > self.t_end:
                break
            track.sail(leg, speed)
            turn = self._steer(track)
            steps = int(self.rng.integers(3, 6))
            first, last = track.turn(turn, steps, speed)
            self._plant("turn", [mmsi], first, last, track.lonlat, annotations=["turn"])
        while track.t + track.period <= self.t_end:
            track.step(speed)
        return track

    def _anchoring(self, mmsi: int) -> _Track:
        lon, lat = self.operating.sample(self.rng)
        track = _Track(mmsi, self.t0, lon, lat, self.spec.report_period_s)
        clon, clat = self.operating.center()
        track.heading = initial_bearing_lonlat(lon, lat, clon, clat)
        track.report()
        speed = self._speed()
        while True:
            leg = int(self.rng.uniform(3600, 4 * 3600))
            stay = int(self.rng.uniform(3600, 3 * 3600))
            if track.t + leg + stay + 3 * track.period > self.t_end:
                break
            track.sail(leg, speed)
            first, last = track.anchor(stay)
            self._plant("stop", [mmsi], first, last, track.lonlat, annotations=["stopped"])
            # leave the anchorage towards the middle of the area
            track.heading = normalize_heading(
                initial_bearing_lonlat(track.lon, track.lat, clon, clat) + float(self.rng.uniform(-45.0, 45.0))
            )
            track.step(speed)
        while track.t + track.period <= self.t_end:
            track.step(speed)
        return track

    def _gappy(self, mmsi: int) -> _Track:
        lon, lat = self.operating.sample(self.rng)
        track = _Track(mmsi, self.t0, lon, lat, self.spec.report_period_s)
        clon, clat = self.operating.center()
        track.heading = initial_bearing_lonlat(lon, lat, clon, clat)
        track.report()
        speed = self._speed()
        while True:
            leg = int(self.rng.uniform(2 * 3600, 5 * 3600))
            silence = int(self.rng.uniform(1800, 5400))
            if track.t + leg + silence + 3 * track.period > self.t_end:
                break
            track.sail(leg, speed)
            if not self.operating.contains(track.lon, track.lat):
                track.heading = initial_bearing_lonlat(track.lon, track.lat, clon, clat)
            t_a = track.t
            gap_at = track.lonlat
            track.sail(silence, speed, silent=True)
            t_b = track.step(speed)
            self._plant("gap", [mmsi], t_a, t_b, gap_at, annotations=["gapStart", "gapEnd"], ce="gap")
        while track.t + track.period <= self.t_end:
            track.step(speed)
        return track

    # -- planted scenarios -------------------------------------------------
    def _delay_track(self, mmsi: int, at: Tuple[float, float], t: int, silence_s: int) -> Tuple[_Track, int, int]:
        """Sail to `at`, fall silent while barely drifting, reappear and sail on."""
        heading = float(self.rng.uniform(0.0, 360.0))
        speed = self._speed()
        track = self._approach(mmsi, at, heading, speed, 3600, t)
        t_a = track.t
        track.sail(silence_s, 0.2, heading, silent=True)
        t_b = track.step(0.2, heading)
        track.sail(3600, speed, heading)
        return track, t_a, t_b

    def _plant_delay(self, track: _Track, t_a: int, t_b: int, at) -> None:
        self._plant("gap", [track.mmsi], t_a, t_b, at, annotations=["gapStart", "gapEnd"], ce="gap")
        self._plant("suspiciousDelay", [track.mmsi], t_a, t_b, at, ce="suspiciousDelay")

    def _suspicious_delay(self) -> List[_Track]:
        at = self._meeting_point()
        t = self._scenario_start(4 * 3600)
        track, t_a, t_b = self._delay_track(self._mmsi(), at, t, int(self.rng.uniform(3600, 7200)))
        self._plant_delay(track, t_a, t_b, at)
        return [track]

    def _rendezvous(self) -> List[_Track]:
        m = self._meeting_point()
        t = self._scenario_start(5 * 3600)
        a = destination_lonlat(m[0], m[1], 90.0, 50.0)
        b = destination_lonlat(m[0], m[1], 270.0, 50.0)
        offset = int(self.rng.integers(1, 20)) * self.spec.report_period_s
        v1, a1, b1 = self._delay_track(self._mmsi(), a, t, 5400)
        v2, a2, b2 = self._delay_track(self._mmsi(), b, t + offset, 5400)
        self._plant_delay(v1, a1, b1, a)
        self._plant_delay(v2, a2, b2, b)
        self._plant(
            "possibleRendezvous",
            sorted((v1.mmsi, v2.mmsi)),
            max(a1, a2),
            min(b1, b2),
            m,
            ce="possibleRendezvous",
        )
        return [v1, v2]

    def _picking(self) -> List[_Track]:
        at = self._meeting_point()
        t = self._scenario_start(6 * 3600)
        p = self.spec.report_period_s
        drop = self._approach(self._mmsi(), at, float(self.rng.uniform(0, 360)), self._speed(), 3600, t)
        d0, d1 = drop.anchor(3600)
        drop.heading = float(self.rng.uniform(0, 360))
        drop.sail(3600, self._speed())
        self._plant("stop", [drop.mmsi], d0, d1, at, annotations=["stopped"])

        pick_at = destination_lonlat(at[0], at[1], float(self.rng.uniform(0, 360)), 200.0)
        wait = int(self.rng.integers(10, 40)) * 60
        arrival = d1 + wait
        arrival -= (arrival - t) % p
        pick = self._approach(self._mmsi(), pick_at, float(self.rng.uniform(0, 360)), self._speed(), 3600, arrival - 3600)
        k0, k1 = pick.anchor(3600)
        pick.heading = float(self.rng.uniform(0, 360))
        pick.sail(3600, self._speed())
        self._plant("stop", [pick.mmsi], k0, k1, pick_at, annotations=["stopped"])
        self._plant("possiblePicking", [drop.mmsi, pick.mmsi], k0, k0, pick_at, ce="possiblePicking")
        return [drop, pick]

    def _fast_approach(self) -> List[_Track]:
        start = self._meeting_point()
        t = self._scenario_start(3 * 3600)
        p = self.spec.report_period_s
        heading = float(self.rng.uniform(0.0, 360.0))
        target = _Track(self._mmsi(), t, start[0], start[1], p)
        target.heading = heading
        behind = destination_lonlat(start[0], start[1], heading + 180.0, 4500.0)
        chaser = _Track(self._mmsi(), t, behind[0], behind[1], p)
        chaser.heading = heading
        target.report()
        chaser.report()
        accelerate_at = t + 1800
        # the speed change belongs to the report the chaser accelerates from
        accel_tau, accel_at = None, start
        fast = False
        while target.t < t + 2 * 3600:
            target.step(8.0)
            dist = haversine_lonlat(chaser.lon, chaser.lat, target.lon, target.lat)
            if not fast and accel_tau is None and chaser.t + p >= accelerate_at:
                fast = True
            elif fast and dist <= 1500.0:
                fast = False
            if fast and accel_tau is None:
                accel_tau, accel_at = chaser.t, chaser.lonlat
            chaser.step(25.0 if fast else 8.0, initial_bearing_lonlat(chaser.lon, chaser.lat, target.lon, target.lat))
        self._plant("fastApproach", [chaser.mmsi], accel_tau, accel_tau, accel_at, ce="fastApproach")
        return [target, chaser]

    # -- noise -------------------------------------------------------------
    def _jitter(self, lon: float, lat: float) -> Tuple[float, float]:
        sigma = self.spec.gps_jitter_m
        if sigma <= 0.0:
            return lon, lat
        dx, dy = np.clip(self.rng.normal(0.0, sigma, size=2), -2.5 * sigma, 2.5 * sigma)
        return (lon + float(dx) / (M_PER_DEG * math.cos(math.radians(lat))), lat + float(dy) / M_PER_DEG)

    def _emit(self, track: _Track, noisy: bool) -> List[Tuple[int, int, int, PositionReport]]:
        """(arrival tau, mmsi, seq, report) tuples, noise included."""
        s = self.spec
        out: List[Tuple[int, int, int, PositionReport]] = []
        for i, (t, lon, lat) in enumerate(track.points):
            lon, lat = self._jitter(lon, lat)
            if noisy and i > 2 and self.rng.random() < s.off_course_rate:
                side = track.heading + (90.0 if self.rng.random() < 0.5 else -90.0)
                lon, lat = destination_lonlat(lon, lat, side, float(self.rng.uniform(3000.0, 6000.0)))
            report = PositionReport.of(track.mmsi, lon, lat, t)
            out.append((t, track.mmsi, len(out), report))
            if noisy and self.rng.random() < s.duplicate_rate:
                out.append((t, track.mmsi, len(out), report))
            if noisy and self.rng.random() < s.timestamp_conflict_rate:
                clon, clat = destination_lonlat(lon, lat, float(self.rng.uniform(0, 360)), 20.0)
                out.append((t, track.mmsi, len(out), PositionReport.of(track.mmsi, clon, clat, t)))
        if noisy and s.out_of_sequence_rate > 0.0:
            i = 1
            while i < len(out) - 1:
                if self.rng.random() < s.out_of_sequence_rate and out[i][0] < out[i + 1][0]:
                    (ta, m, qa, ra), (tb, _, qb, rb) = out[i], out[i + 1]
                    out[i], out[i + 1] = (ta, m, qa, rb), (tb, m, qb, ra)
                    i += 2
                else:
                    i += 1
        return out

    # -- geometry ----------------------------------------------------------
    def _ports(self) -> List[Port]:
        bbox = self.spec.grid.bbox
        band = _Region(bbox, 0.03)
        ports = []
        for k in range(self.spec.n_ports):
            side = int(self.rng.integers(0, 4))
            u = float(self.rng.uniform(0.05, 0.95))
            lon = band.min_lon + u * (band.max_lon - band.min_lon)
            lat = band.min_lat + u * (band.max_lat - band.min_lat)
            if side == 0:
                lat = band.min_lat
            elif side == 1:
                lat = band.max_lat
            elif side == 2:
                lon = band.min_lon
            else:
                lon = band.max_lon
            ports.append(Port(id=f"port-{k}", pos=GeoPoint(lon=lon, lat=lat)))
        return ports

    def _areas(self) -> List[AreaPolygon]:
        areas = []
        for k in range(self.spec.n_areas):
            clon, clat = self.operating.sample(self.rng)
            n = int(self.rng.integers(5, 10))
            radius = float(self.rng.uniform(5000.0, 15000.0))
            ring = []
            for j in range(n):
                r = radius * float(self.rng.uniform(0.7, 1.0))
                lon, lat = destination_lonlat(clon, clat, 360.0 * j / n, r)
                ring.append(GeoPoint(lon=lon, lat=lat))
            areas.append(AreaPolygon(id=f"area-{k}", ring=ring, kind=AreaKind.PROTECTED))
        return areas

    # -- assembly ----------------------------------------------------------
    def _check(self) -> None:
        s = self.spec
        if s.report_period_s > 300:
            raise InvalidSpecError(f"report period {s.report_period_s}s leaves no room between reports and gaps")
        if s.duration_s < 20 * s.report_period_s:
            raise InvalidSpecError("duration must cover at least 20 report periods")
        lo, hi = s.speed_knots
        if not 0 < lo <= hi < 20:
            raise InvalidSpecError(f"background speeds {s.speed_knots} must lie in (0, 20) knots")
        if s.n_vessels and sum(w for w in s.archetypes.values() if w > 0) <= 0:
            raise InvalidSpecError("no archetype has a positive weight")
        if s.planted_vessels and s.duration_s < 8 * 3600:
            raise InvalidSpecError("planted scenarios need at least 8 hours")
        if s.n_vessels + s.planted_vessels >= MMSI_CLONE_STRIDE:
            raise InvalidSpecError("too many vessels for the id scheme")

    def generate(self) -> SyntheticFleet:
        self._check()
        s = self.spec
        ports = self._ports()
        areas = self._areas()
        kinds = [k for k, w in s.archetypes.items() if w > 0]
        weights = np.asarray([s.archetypes[k] for k in kinds], dtype=float)
        build = {
            Archetype.STRAIGHT: self._straight,
            Archetype.TURNING: self._turning,
            Archetype.ANCHORING: self._anchoring,
            Archetype.GAPPY: self._gappy,
        }
        tracks: List[Tuple[_Track, bool]] = []
        for _ in range(s.n_vessels):
            kind = kinds[int(self.rng.choice(len(kinds), p=weights / weights.sum()))]
            tracks.append((build[kind](self._mmsi()), True))
        for _ in range(s.suspicious_delays):
            tracks += [(t, False) for t in self._suspicious_delay()]
        for _ in range(s.rendezvous):
            tracks += [(t, False) for t in self._rendezvous()]
        for _ in range(s.pickings):
            tracks += [(t, False) for t in self._picking()]
        for _ in range(s.fast_approaches):
            tracks += [(t, False) for t in self._fast_approach()]

        rows: List[Tuple[int, int, int, PositionReport]] = []
        for track, noisy in tracks:
            rows.extend(self._emit(track, noisy))
        ledger = list(self.ledger)
        originals = list(rows)
        for k in range(1, s.increase_factor):
            shift = k * MMSI_CLONE_STRIDE
            for t, m, q, r in originals:
                rows.append((t, m + shift, q, r.model_copy(update={"mmsi": r.mmsi + shift})))
            ledger += [e.model_copy(update={"vessels": tuple(v + shift for v in e.vessels)}) for e in self.ledger]
        rows.sort(key=lambda row: (row[0], row[1], row[2]))
        reports = [row[3] for row in rows]
        logger.info("generated %d reports for %d vessels, %d ledger entries", len(reports), len(tracks) * s.increase_factor, len(ledger))
        return SyntheticFleet(reports=reports, ledger=ledger, ports=ports, areas=areas)


def generate(spec: SyntheticFleetSpec, seed: int) -> SyntheticFleet:
    return FleetGenerator(spec, seed).generate()


def write_fleet(fleet: SyntheticFleet, out_dir: Union[str, Path]) -> Dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "fleet": out / "fleet.csv",
        "ledger": out / "ledger.jsonl",
        "ports": out / "ports.csv",
        "areas": out / "areas.geojson",
    }
    write_positions(fleet.reports, paths["fleet"])
    with paths["ledger"].open("w", encoding="utf-8") as fh:
        for e in fleet.ledger:
            fh.write(json.dumps(jsonable(e), sort_keys=True) + "\n")
    dump_ports(fleet.ports, paths["ports"])
    dump_areas(fleet.areas, paths["areas"])
    return paths


def read_ledger(path: Union[str, Path]) -> List[PlantedEvent]:
    with open(path, encoding="utf-8") as fh:
        return [PlantedEvent.model_validate_json(line) for line in fh if line.strip()]
