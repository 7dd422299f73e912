import pytest

from geostream.errors import InvalidSpecError
from geostream.runtime.fleet_generator import (
    MMSI_CLONE_STRIDE,
    Archetype,
    SyntheticFleetSpec,
    generate,
    read_ledger,
    write_fleet,
)
from geostream.runtime.sources import CsvPositionSource
from geostream.spatial.grid_index import GridIndex

TWO_HOURS = 2 * 3600


def small(**kw) -> SyntheticFleetSpec:
    return SyntheticFleetSpec(**{"n_vessels": 4, "duration_s": TWO_HOURS, **kw})


def test_same_seed_same_fleet():
    spec = small(n_vessels=8, duration_s=6 * 3600, duplicate_rate=0.05, off_course_rate=0.05)
    a, b = generate(spec, seed=5), generate(spec, seed=5)
    assert a.reports == b.reports
    assert a.ledger == b.ledger
    assert generate(spec, seed=6).reports != a.reports


def test_straight_fleet_has_an_empty_ledger():
    fleet = generate(small(archetypes={Archetype.STRAIGHT: 1.0}), seed=1)
    assert fleet.ledger == []
    assert len(fleet.vessels) == 4
    assert len(fleet.reports) == 4 * (TWO_HOURS // 60 + 1)


def test_reports_arrive_in_time_order():
    fleet = generate(small(), seed=2)
    taus = [r.tau for r in fleet.reports]
    assert taus == sorted(taus)


def test_increase_factor_clones_every_vessel():
    spec = small(archetypes={Archetype.STRAIGHT: 1.0})
    base = generate(spec, seed=3)
    tripled = generate(spec.model_copy(update={"increase_factor": 3}), seed=3)
    assert len(tripled.reports) == 3 * len(base.reports)
    assert len(tripled.vessels) == 3 * len(base.vessels)
    assert set(tripled.vessels) >= {m + 2 * MMSI_CLONE_STRIDE for m in base.vessels}


def test_clones_carry_their_own_ledger_entries():
    spec = SyntheticFleetSpec(n_vessels=0, duration_s=8 * 3600, suspicious_delays=1, increase_factor=2)
    fleet = generate(spec, seed=4)
    vessels = sorted(e.vessels[0] for e in fleet.ledger)
    assert len(vessels) == 4
    assert vessels[-1] - vessels[0] == MMSI_CLONE_STRIDE


def test_duplicates_are_injected_into_background_vessels():
    spec = small(archetypes={Archetype.STRAIGHT: 1.0})
    clean = generate(spec, seed=9)
    noisy = generate(spec.model_copy(update={"duplicate_rate": 1.0}), seed=9)
    assert len(noisy.reports) == 2 * len(clean.reports)


@pytest.mark.parametrize(
    "overrides",
    [
        {"report_period_s": 400},
        {"duration_s": 600},
        {"speed_knots": (0.0, 10.0)},
        {"speed_knots": (12.0, 25.0)},
        {"archetypes": {Archetype.STRAIGHT: 0.0}},
        {"rendezvous": 1},
    ],
)
def test_impossible_fleets_are_refused(overrides):
    with pytest.raises(InvalidSpecError):
        generate(small(**overrides), seed=0)


def test_planted_scenarios(planted_fleet):
    kinds = [e.kind for e in planted_fleet.ledger]
    for kind in ("suspiciousDelay", "possibleRendezvous", "possiblePicking", "fastApproach"):
        assert kind in kinds
    assert len(planted_fleet.vessels) == 6 + 7
    (rv,) = [e for e in planted_fleet.ledger if e.kind == "possibleRendezvous"]
    assert list(rv.vessels) == sorted(rv.vessels)
    assert rv.t_start < rv.t_end
    (pick,) = [e for e in planted_fleet.ledger if e.kind == "possiblePicking"]
    drop_stop = next(e for e in planted_fleet.ledger if e.kind == "stop" and e.vessels == pick.vessels[:1])
    assert 0 < pick.t_start - drop_stop.t_end < 3600


def test_ports_and_areas_fit_the_grid(planted_fleet):
    spec = SyntheticFleetSpec()
    index = GridIndex.build(planted_fleet.areas, planted_fleet.ports, spec.grid)
    assert len(index.ports) == spec.n_ports
    assert len(index.areas) == spec.n_areas


def test_written_fleet_reads_back(tmp_path):
    fleet = generate(SyntheticFleetSpec(n_vessels=3, duration_s=8 * 3600, pickings=1), seed=8)
    paths = write_fleet(fleet, tmp_path / "data")
    assert list(CsvPositionSource(paths["fleet"])) == fleet.reports
    assert read_ledger(paths["ledger"]) == fleet.ledger
    assert paths["areas"].exists() and paths["ports"].exists()
