"""
run_metrics.py – the report of a finished replay, as JSON and as a table.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from typing import Dict, List

from pydantic import BaseModel, Field

from geostream.errors import ZeroRawCountError
from geostream.recognition.ce_instance import CeName
from geostream.runtime.replay import RunResult
from geostream.synopsis.metrics import (
    TripStats,
    characterise,
    classify_breakdown,
    compression_ratio,
    fleet_rmse,
    max_or_zero,
    mean_or_zero,
    reconstruct_trips,
    rmse_histogram,
    summarize_trips,
)
from geostream.synopsis.serialization import jsonable
from geostream.tracking.critical_point import CriticalPoint


class RunMetrics(BaseModel):
    slides: int = 0
    positions: int = 0
    accepted: int = 0
    rejected: Dict[str, int] = Field(default_factory=dict)
    late_dropped: int = 0
    malformed: int = 0
    wall_s: float = 0.0
    throughput_per_s: float = 0.0
    slide_latency_mean_s: float = 0.0
    slide_latency_max_s: float = 0.0
    window_points_mean: float = 0.0
    window_points_max: int = 0
    window_events_mean: float = 0.0
    window_events_max: int = 0
    critical_points: int = 0
    compression_ratio: float = 0.0
    characterisation: Dict[str, int] = Field(default_factory=dict)
    breakdown: Dict[str, int] = Field(default_factory=dict)
    rmse_mean_m: float = 0.0
    rmse_max_m: float = 0.0
    rmse_histogram: Dict[str, int] = Field(default_factory=dict)
    trips: TripStats = TripStats()
    movement_events: int = 0
    ce_counts: Dict[str, int] = Field(default_factory=dict)
    ce_me_ratio: float = 0.0


def _run_compression(accepted: int, critical: int) -> float:
    try:
        return compression_ratio(accepted, min(critical, accepted))
    except ZeroRawCountError:
        return 0.0


def metrics(run: RunResult) -> RunMetrics:
    slides = run.slides
    by_vessel: Dict[int, List[CriticalPoint]] = defaultdict(list)
    for p in run.critical_points:
        by_vessel[p.mmsi].append(p)

    rejected = sum(run.rejections.values()) + run.late_dropped
    breakdown = classify_breakdown(run.accepted, run.labels, rejected) if run.raw_count else None

    rmses = list(fleet_rmse(run.raw_by_vessel, by_vessel).values()) if run.raw_by_vessel else []
    trips = [t for pts in by_vessel.values() for t in reconstruct_trips(pts)]
    ce_counts = Counter(ce.name.value for ce in run.ces)
    n_ces = sum(ce_counts.values())

    return RunMetrics(
        slides=len(slides),
        positions=run.raw_count,
        accepted=run.accepted,
        rejected=dict(run.rejections),
        late_dropped=run.late_dropped,
        malformed=run.malformed,
        wall_s=run.wall_s,
        throughput_per_s=run.raw_count / run.wall_s if run.wall_s > 0 else 0.0,
        slide_latency_mean_s=mean_or_zero([s.latency_s for s in slides]),
        slide_latency_max_s=max_or_zero([s.latency_s for s in slides]),
        window_points_mean=mean_or_zero([s.window_points for s in slides]),
        window_points_max=max((s.window_points for s in slides), default=0),
        window_events_mean=mean_or_zero([s.window_events for s in slides]),
        window_events_max=max((s.window_events for s in slides), default=0),
        critical_points=len(run.critical_points),
        compression_ratio=_run_compression(run.accepted, len(run.critical_points)),
        characterisation=characterise(run.critical_points) if run.critical_points else {},
        breakdown={k.value: v for k, v in breakdown.counts.items()} if breakdown else {},
        rmse_mean_m=mean_or_zero(rmses),
        rmse_max_m=max_or_zero(rmses),
        rmse_histogram=rmse_histogram(rmses) if rmses else {},
        trips=summarize_trips(trips),
        movement_events=run.movement_events,
        ce_counts={name.value: ce_counts.get(name.value, 0) for name in CeName} if n_ces else {},
        ce_me_ratio=n_ces / run.movement_events if run.movement_events else 0.0,
    )


def to_json(m: RunMetrics) -> str:
    return json.dumps(jsonable(m), indent=2, sort_keys=True)


def to_table(m: RunMetrics) -> str:
    rows = [
        ("positions", f"{m.positions}"),
        ("accepted", f"{m.accepted}"),
        ("rejected", ", ".join(f"{k} {v}" for k, v in m.rejected.items()) or "0"),
        ("late dropped", f"{m.late_dropped}"),
        ("malformed", f"{m.malformed}"),
        ("slides", f"{m.slides}"),
        ("throughput", f"{m.throughput_per_s:,.0f} positions/s"),
        ("slide latency", f"mean {m.slide_latency_mean_s:.3f}s, max {m.slide_latency_max_s:.3f}s"),
        ("window points", f"mean {m.window_points_mean:.0f}, max {m.window_points_max}"),
        ("window events", f"mean {m.window_events_mean:.0f}, max {m.window_events_max}"),
        ("critical points", f"{m.critical_points}"),
        ("compression", f"{m.compression_ratio:.2%}"),
        ("RMSE", f"mean {m.rmse_mean_m:.1f} m, max {m.rmse_max_m:.1f} m"),
        ("trips", f"{m.trips.trips} ({m.trips.open_ended} open-ended)"),
        ("movement events", f"{m.movement_events}"),
        ("CE/ME ratio", f"{m.ce_me_ratio:.4f}"),
    ]
    rows += [(f"  {k}", f"{v}") for k, v in m.breakdown.items()]
    rows += [(f"  CE {k}", f"{v}") for k, v in m.ce_counts.items()]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)
