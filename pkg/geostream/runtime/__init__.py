# Public re-exports
from .partition import partition, shard_of_vessel, stable_hash
from .sources import CsvPositionSource, parse_position, write_positions
from .replay import Pipeline, RunResult, SlideStats, replay
from .run_metrics import RunMetrics, metrics, to_json, to_table
from .fleet_generator import (
    Archetype,
    PlantedEvent,
    SyntheticFleet,
    SyntheticFleetSpec,
    generate,
    read_ledger,
    write_fleet,
)

__all__ = [
    "partition",
    "shard_of_vessel",
    "stable_hash",
    "CsvPositionSource",
    "parse_position",
    "write_positions",
    "Pipeline",
    "RunResult",
    "SlideStats",
    "replay",
    "RunMetrics",
    "metrics",
    "to_json",
    "to_table",
    "Archetype",
    "PlantedEvent",
    "SyntheticFleet",
    "SyntheticFleetSpec",
    "generate",
    "read_ledger",
    "write_fleet",
]
