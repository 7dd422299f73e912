"""
config.py – every tunable of a run in one validated object.

The on-disk format is plain key-value text:

    # comment
    tracker.turn_threshold_deg = 15
    window.range_omega_s = 21600
    grid.bbox = 19.0, 34.0, 30.0, 41.5

Each key is <section>.<field>; sections map onto the *Config models below.
Unknown sections or fields are rejected.
"""

from __future__ import annotations

import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from geostream.recognition.ce_instance import CeConfig
from geostream.spatial.geometry import GridConfig
from geostream.synopsis.synopsis_store import WindowSpec
from geostream.tracking.mobility_tracker import TrackerConfig
from geostream.tracking.noise_filter import NoiseConfig

logger = logging.getLogger(__name__)


class Partitioning(str, Enum):
    MMSI_HASH = "mmsi_hash"
    SUB_GRID = "sub_grid"


class ExecutorKind(str, Enum):
    THREAD = "thread"
    PROCESS = "process"


class ReplayConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    window: WindowSpec = WindowSpec()
    # positions per second of wall-clock pacing; None replays as fast as possible
    rate_override: Optional[float] = Field(default=None, gt=0)
    shard_count: int = Field(default=1, ge=1)
    partitioning: Partitioning = Partitioning.MMSI_HASH
    executor: ExecutorKind = ExecutorKind.THREAD
    keep_raw: bool = False


class PipelineConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    noise: NoiseConfig = NoiseConfig()
    tracker: TrackerConfig = TrackerConfig()
    grid: GridConfig = GridConfig()
    ce: CeConfig = CeConfig()
    replay: ReplayConfig = ReplayConfig()

    @property
    def window(self) -> WindowSpec:
        return self.replay.window

    def with_overrides(self, **dotted: Any) -> "PipelineConfig":
        """Copy with `section.field` values replaced, e.g. {"window.slide_beta_s": 60}."""
        data = self.model_dump()
        for key, value in dotted.items():
            if value is None:
                continue
            _assign(data, key, value)
        return PipelineConfig.model_validate(data)


_SECTIONS = ("noise", "tracker", "grid", "ce", "replay", "window")


def _assign(data: Dict[str, Any], key: str, value: Any) -> None:
    section, _, name = key.partition(".")
    if section not in _SECTIONS or not name:
        raise ValueError(f"unknown config key {key!r}")
    target = data["replay"]["window"] if section == "window" else data[section]
    target[name] = value


def _parse_value(raw: str) -> Any:
    raw = raw.strip()
    if "," in raw:
        return [part.strip() for part in raw.split(",")]
    if raw.lower() in ("none", "null", ""):
        return None
    return raw


def load_config(path: Union[str, Path]) -> PipelineConfig:
    data: Dict[str, Any] = PipelineConfig().model_dump()
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"{path}:{n}: expected key = value")
        try:
            _assign(data, key.strip(), _parse_value(value))
        except ValueError as e:
            raise ValueError(f"{path}:{n}: {e}") from e
    cfg = PipelineConfig.model_validate(data)
    logger.debug("loaded config from %s", path)
    return cfg


def _format(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return ", ".join(_format(v) for v in value)
    if isinstance(value, Enum):
        return str(value.value)
    if value is None:
        return "none"
    return str(value)


def dump_config(cfg: PipelineConfig) -> str:
    data = cfg.model_dump()
    lines = []
    for section in _SECTIONS:
        values = data["replay"]["window"] if section == "window" else data[section]
        lines.append(f"# {section}")
        for name, value in values.items():
            if section == "replay" and name == "window":
                continue
            lines.append(f"{section}.{name} = {_format(value)}")
        lines.append("")
    return "\n".join(lines)
