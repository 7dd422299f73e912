from pathlib import Path

import pytest
from pydantic import ValidationError

from geostream.config import ExecutorKind, Partitioning, PipelineConfig, dump_config, load_config

SHIPPED = Path(__file__).resolve().parent.parent / "conf" / "geostream.conf"


def test_shipped_config_holds_the_defaults():
    assert load_config(SHIPPED) == PipelineConfig()


def test_dump_then_load(tmp_path):
    cfg = PipelineConfig().with_overrides(
        **{
            "tracker.turn_threshold_deg": 7.5,
            "grid.bbox": (20.0, 35.0, 28.0, 40.0),
            "replay.rate_override": 500.0,
            "replay.partitioning": "sub_grid",
            "window.slide_beta_s": 300,
        }
    )
    path = tmp_path / "run.conf"
    path.write_text(dump_config(cfg), encoding="utf-8")
    assert load_config(path) == cfg


def test_comments_and_blank_lines_are_skipped(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("# tuned\n\nwindow.slide_beta_s = 60  # one minute\nreplay.executor = process\n", encoding="utf-8")
    cfg = load_config(path)
    assert cfg.window.slide_beta_s == 60
    assert cfg.replay.executor is ExecutorKind.PROCESS
    assert cfg.tracker == PipelineConfig().tracker


@pytest.mark.parametrize(
    "line",
    [
        "radar.range = 3",
        "tracker.turn_threshold = 15",
        "tracker.turn_threshold_deg 15",
        "tracker.turn_threshold_deg = -1",
        "window.slide_beta_s = 30000",
    ],
)
def test_bad_lines_are_rejected(tmp_path, line):
    path = tmp_path / "bad.conf"
    path.write_text(line + "\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_config(path)


def test_overrides_skip_none_and_validate():
    base = PipelineConfig()
    cfg = base.with_overrides(**{"replay.shard_count": 4, "replay.partitioning": None, "grid.nx": 60})
    assert cfg.replay.shard_count == 4
    assert cfg.replay.partitioning is Partitioning.MMSI_HASH
    assert cfg.grid.nx == 60
    assert base.replay.shard_count == 1
    with pytest.raises(ValidationError):
        base.with_overrides(**{"replay.shard_count": 0})
    with pytest.raises(ValueError):
        base.with_overrides(**{"shards": 2})
