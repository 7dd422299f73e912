import pytest

from geostream.config import PipelineConfig
from geostream.runtime.fleet_generator import SyntheticFleetSpec, generate
from geostream.spatial.geometry import GridConfig
from geostream.spatial.grid_index import GridIndex
from geostream.tracking.mobility_tracker import MobilityTracker, TrackerConfig
from geostream.tracking.noise_filter import NoiseConfig


@pytest.fixture
def tracker_cfg() -> TrackerConfig:
    return TrackerConfig()


@pytest.fixture
def noise_cfg() -> NoiseConfig:
    return NoiseConfig()


@pytest.fixture
def tracker(tracker_cfg, noise_cfg) -> MobilityTracker:
    return MobilityTracker(tracker_cfg, noise_cfg, keep_raw=True)


@pytest.fixture
def grid_cfg() -> GridConfig:
    return GridConfig()


@pytest.fixture
def empty_grid(grid_cfg) -> GridIndex:
    return GridIndex.build([], [], grid_cfg)


@pytest.fixture
def pipeline_cfg() -> PipelineConfig:
    return PipelineConfig()


@pytest.fixture(scope="session")
def planted_fleet():
    """A small fleet with one scenario of every kind and no injected noise."""
    spec = SyntheticFleetSpec(
        n_vessels=6,
        duration_s=12 * 3600,
        suspicious_delays=1,
        rendezvous=1,
        pickings=1,
        fast_approaches=1,
        # anchored jitter never reaches v_min
        gps_jitter_m=2.0,
    )
    return generate(spec, seed=11)
