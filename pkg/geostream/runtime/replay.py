"""
replay.py – drive the whole pipeline over a stream of position reports.

The window keeps pace with the reported timestamps, not with the wall
clock. Query times are the multiples of the slide step; every report up to a
query time belongs to that query's batch. For each batch:

    noise filter + tracker (per vessel shard)
      -> synopsis slide (evicted points are exported)
      -> movement events into the recognition window
      -> vessel snapshot refresh on the grid
      -> recognition, vessel phase then cell phase

Shards share nothing; the coordinator merges their outputs by sort key, so
the results do not depend on the number of shards.
"""

from __future__ import annotations

import logging
import time
from collections import Counter, defaultdict
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from geostream.config import ExecutorKind, PipelineConfig
from geostream.geo import GeoPoint
from geostream.recognition.ce_instance import CeConfig, CeInstance
from geostream.recognition.context import RecognitionContext, VesselFluents
from geostream.recognition.engine import group_by_cell, recognize_cells, recognize_vessels
from geostream.recognition.event_instance import EventInstance
from geostream.recognition.ipattern import IPattern
from geostream.recognition.window import RecognitionWindow
from geostream.runtime.partition import partition
from geostream.spatial.grid_index import GridIndex
from geostream.synopsis.synopsis_store import SynopsisState
from geostream.tracking.critical_point import CriticalPoint
from geostream.tracking.mobility_tracker import MobilityTracker
from geostream.tracking.position_report import PositionReport
from geostream.tracking.vessel_state import PointClass

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


class SlideStats(BaseModel):
    q: int
    positions: int = 0
    critical_points: int = 0
    evicted: int = 0
    movement_events: int = 0
    ces: int = 0
    window_points: int = 0
    window_events: int = 0
    latency_s: float = 0.0


class RunResult(BaseModel):
    """Everything a finished replay produced."""

    critical_points: List[CriticalPoint] = Field(default_factory=list)
    ces: List[CeInstance] = Field(default_factory=list)
    slides: List[SlideStats] = Field(default_factory=list)
    raw_count: int = 0
    accepted: int = 0
    rejections: Dict[str, int] = Field(default_factory=dict)
    labels: Dict[PointClass, int] = Field(default_factory=dict)
    late_dropped: int = 0
    malformed: int = 0
    movement_events: int = 0
    wall_s: float = 0.0
    raw_by_vessel: Dict[int, List[PositionReport]] = Field(default_factory=dict)


# ---------------------------------------------------------------------------
# shard workers; module-level so a process pool can pickle them
# ---------------------------------------------------------------------------
def _run_tracker_shard(shard: int, tracker: MobilityTracker, reports: List[PositionReport]):
    points = tracker.process_batch(reports)
    return shard, tracker, points, tracker.take_retracted()


def _run_vessel_phase(shard: int, q: int, omega_s: int, events: List[EventInstance], grid: GridIndex, cfg: CeConfig, pattern_names: List[str]):
    ctx = RecognitionContext(q, omega_s, events, grid, cfg)
    ces, summaries = recognize_vessels(ctx, IPattern.create_all(pattern_names))
    return shard, ces, summaries


def _run_cell_phase(shard: int, by_cell: Dict[Cell, Dict[int, VesselFluents]], cfg: CeConfig, q: int, pattern_names: List[str]):
    return shard, recognize_cells(by_cell, IPattern.create_all(pattern_names), cfg, q)


class Pipeline:
    def __init__(
        self,
        cfg: PipelineConfig,
        grid: GridIndex,
        pattern_names: Optional[Sequence[str]] = None,
        on_evicted: Optional[Callable[[List[CriticalPoint]], None]] = None,
    ):
        self.cfg = cfg
        self.grid = grid
        self.spec = cfg.window
        self.shards = cfg.replay.shard_count
        self.pattern_names = list(pattern_names) if pattern_names is not None else IPattern.registered()
        self.on_evicted = on_evicted
        self.trackers = [
            MobilityTracker(cfg.tracker, cfg.noise, keep_raw=cfg.replay.keep_raw) for _ in range(self.shards)
        ]
        self.synopsis = SynopsisState()
        self.window = RecognitionWindow(self.spec.range_omega_s, self.spec.slide_beta_s)
        self.grid.max_snapshots = self.spec.range_omega_s // self.spec.slide_beta_s + 2
        self.q: Optional[int] = None
        self.pending: List[PositionReport] = []
        self.exported: List[CriticalPoint] = []
        self.ces: Dict[tuple, CeInstance] = {}
        self.result = RunResult()
        self._executor: Optional[Executor] = None

    # ------------------------------------------------------------------
    # executor
    # ------------------------------------------------------------------
    @property
    def executor(self) -> Optional[Executor]:
        if self.shards == 1:
            return None
        if self._executor is None:
            if self.cfg.replay.executor is ExecutorKind.PROCESS:
                self._executor = ProcessPoolExecutor(max_workers=self.shards)
            else:
                self._executor = ThreadPoolExecutor(max_workers=self.shards, thread_name_prefix="shard")
        return self._executor

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def __enter__(self) -> "Pipeline":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def _map(self, fn, calls: List[tuple]) -> List[tuple]:
        """Run fn(*args) for every call, in shard order."""
        ex = self.executor
        if ex is None:
            return [fn(*args) for args in calls]
        futures = [ex.submit(fn, *args) for args in calls]
        return sorted((f.result() for f in futures), key=lambda r: r[0])

    # ------------------------------------------------------------------
    # stream side
    # ------------------------------------------------------------------
    def _boundary(self, tau: int) -> int:
        beta = self.spec.slide_beta_s
        return -(-tau // beta) * beta

    def feed(self, report: PositionReport) -> None:
        self.result.raw_count += 1
        if self.q is None:
            self.q = self._boundary(report.tau) - self.spec.slide_beta_s
        elif report.tau <= self.q - self.spec.range_omega_s:
            self.result.late_dropped += 1
            logger.warning("vessel %s report at %s is older than the window, dropped", report.mmsi, report.tau)
            return
        while report.tau > self.q + self.spec.slide_beta_s:
            self._slide(self.q + self.spec.slide_beta_s)
        self.pending.append(report)

    def feed_all(self, reports: Iterable[PositionReport], rate: Optional[float] = None) -> None:
        started = time.perf_counter()
        for n, report in enumerate(reports, start=1):
            self.feed(report)
            if rate is not None:
                ahead = n / rate - (time.perf_counter() - started)
                if ahead > 0:
                    time.sleep(ahead)

    def finish(self) -> RunResult:
        """Process what is pending, then export everything left in the synopsis."""
        if self.q is not None and self.pending:
            self._slide(self.q + self.spec.slide_beta_s)
        rest = self.synopsis.flush()
        self._export(rest)
        r = self.result
        r.critical_points = self.exported
        r.ces = sorted(self.ces.values(), key=CeInstance.sort_key)
        r.accepted = sum(t.accepted for t in self.trackers)
        rejections: Counter = Counter()
        labels: Counter = Counter()
        for t in self.trackers:
            rejections.update({k.value: v for k, v in t.rejections.items()})
            labels.update(t.class_counts())
        r.rejections = dict(sorted(rejections.items()))
        r.labels = {PointClass(k): v for k, v in labels.items()}
        r.movement_events = self.window.ingested
        if self.cfg.replay.keep_raw:
            r.raw_by_vessel = {
                m: list(s.raw) for t in self.trackers for m, s in t.states.items() if s.raw
            }
        return r

    def _export(self, points: List[CriticalPoint]) -> None:
        if not points:
            return
        self.exported.extend(points)
        if self.on_evicted is not None:
            self.on_evicted(points)

    def _withdraw(self, points: List[CriticalPoint]) -> None:
        """Take back critical points a later same-timestamp report replaced."""
        for p in points:
            in_synopsis = self.synopsis.remove(p)
            in_window = self.window.retract(EventInstance.from_critical_point(p))
            if not in_synopsis:
                logger.warning("vessel %s: replaced %s at %s was already exported", p.mmsi, p.annotation.value, p.t_start)
            elif not in_window:
                logger.debug("vessel %s: replaced %s at %s had left the window", p.mmsi, p.annotation.value, p.t_start)

    # ------------------------------------------------------------------
    # one slide
    # ------------------------------------------------------------------
    def _slide(self, q: int) -> None:
        started = time.perf_counter()
        batch, self.pending = self.pending, []
        stats = SlideStats(q=q, positions=len(batch))

        # 1. tracking, one shard per vessel group
        by_shard: Dict[int, List[PositionReport]] = defaultdict(list)
        for r in batch:
            by_shard[partition(r, self.shards)].append(r)
        calls = [(i, self.trackers[i], by_shard.get(i, [])) for i in range(self.shards)]
        points: List[CriticalPoint] = []
        retracted: List[CriticalPoint] = []
        for shard, tracker, pts, gone in self._map(_run_tracker_shard, calls):
            self.trackers[shard] = tracker
            points.extend(pts)
            retracted.extend(gone)
        points.sort(key=CriticalPoint.sort_key)
        stats.critical_points = len(points)
        if retracted:
            self._withdraw(retracted)

        # 2. synopsis window
        self.synopsis.add(points)
        evicted = self.synopsis.slide(q, self.spec)
        self._export(evicted)
        stats.evicted = len(evicted)
        stats.window_points = len(self.synopsis)

        # 3. movement events
        stats.movement_events = self.window.ingest_all(EventInstance.from_critical_point(p) for p in points)
        events = self.window.advance(q)
        stats.window_events = len(events)

        # 4. vessel cells as of this query
        positions: Dict[int, GeoPoint] = {}
        for t in self.trackers:
            positions.update({m: pos for m, (pos, _) in t.latest_positions().items()})
        self.grid.refresh_vessels(q, positions)

        # 5. recognition
        ces = self._recognize(q, events)
        for ce in ces:
            self.ces[ce.key()] = ce
        stats.ces = len(ces)

        self.q = q
        stats.latency_s = time.perf_counter() - started
        self.result.slides.append(stats)
        logger.info(
            "q=%s: %d positions, %d critical, %d evicted, %d events in window, %d CEs (%.3fs)",
            q, stats.positions, stats.critical_points, stats.evicted, stats.window_events, stats.ces, stats.latency_s,
        )

    def _recognize(self, q: int, events: List[EventInstance]) -> List[CeInstance]:
        if not events:
            return []
        omega = self.spec.range_omega_s
        part = self.cfg.replay.partitioning

        # vessel phase: a vessel goes to the shard of its latest event
        latest: Dict[int, EventInstance] = {}
        for e in events:
            latest[e.vessel] = e
        owner = {v: partition(e, self.shards, part, self.grid) for v, e in latest.items()}
        per_shard: Dict[int, List[EventInstance]] = defaultdict(list)
        for e in events:
            per_shard[owner[e.vessel]].append(e)
        calls = [
            (i, q, omega, per_shard[i], self.grid, self.cfg.ce, self.pattern_names)
            for i in range(self.shards) if per_shard.get(i)
        ]
        ces: List[CeInstance] = []
        summaries: List[VesselFluents] = []
        for _, found, summ in self._map(_run_vessel_phase, calls):
            ces.extend(found)
            summaries.extend(summ.values())

        # cell phase: a cell goes to its sub-grid owner
        cell_shard: Dict[int, Dict[Cell, Dict[int, VesselFluents]]] = defaultdict(dict)
        for cell, fluents in group_by_cell(summaries).items():
            cell_shard[partition(cell, self.shards, part, self.grid)][cell] = fluents
        calls = [(i, cell_shard[i], self.cfg.ce, q, self.pattern_names) for i in sorted(cell_shard)]
        for _, found in self._map(_run_cell_phase, calls):
            ces.extend(found)
        ces.sort(key=CeInstance.sort_key)
        return ces


def replay(
    reports: Iterable[PositionReport],
    cfg: PipelineConfig,
    grid: GridIndex,
    pattern_names: Optional[Sequence[str]] = None,
    on_evicted: Optional[Callable[[List[CriticalPoint]], None]] = None,
) -> RunResult:
    started = time.perf_counter()
    with Pipeline(cfg, grid, pattern_names=pattern_names, on_evicted=on_evicted) as pipeline:
        pipeline.feed_all(reports, rate=cfg.replay.rate_override)
        result = pipeline.finish()
    result.wall_s = time.perf_counter() - started
    malformed = getattr(reports, "malformed", 0)
    result.malformed = malformed
    return result
