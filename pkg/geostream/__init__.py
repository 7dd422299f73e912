"""
geostream – compress vessel position streams into critical-point synopses and
recognize complex maritime events over them.
"""

from geostream.config import PipelineConfig, load_config, dump_config
from geostream.errors import GeostreamError
from geostream.runtime import Pipeline, RunResult, replay, metrics

__all__ = [
    "PipelineConfig",
    "load_config",
    "dump_config",
    "GeostreamError",
    "Pipeline",
    "RunResult",
    "replay",
    "metrics",
]
