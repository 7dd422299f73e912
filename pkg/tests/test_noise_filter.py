import pytest

from geostream.geo import destination_lonlat
from geostream.tracking.critical_point import Annotation
from geostream.tracking.mobility_tracker import MobilityTracker, compress
from geostream.tracking.noise_filter import NoiseConfig, NoiseReason, filter_report
from geostream.tracking.position_report import PositionReport
from geostream.tracking.vessel_state import PointClass, VesselState
from tests.tracks import T0, continue_from, sail


def run(tracker, reports):
    return [tracker.process(r).verdict for r in reports]


def test_first_report_is_always_accepted(noise_cfg):
    state = VesselState(1, 10)
    verdict = filter_report(PositionReport.of(1, 24.0, 37.0, T0), state, noise_cfg)
    assert verdict.accepted and verdict.reason is None


def test_clean_track_has_no_rejections(tracker):
    verdicts = run(tracker, sail(1, n=200, speed_kn=14.0, heading=37.0))
    assert all(v.accepted for v in verdicts)
    assert sum(tracker.rejections.values()) == 0


def test_implausible_jump_back_is_rejected(tracker):
    track = sail(1, n=5, heading=90.0)
    run(tracker, track)
    last = track[-1]
    # 270 m behind the previous point 5 s later: about 105 knots
    lon, lat = destination_lonlat(last.pos.lon, last.pos.lat, 270.0, 270.0)
    verdict = tracker.process(PositionReport.of(1, lon, lat, last.tau + 5)).verdict
    assert not verdict.accepted
    assert verdict.reason is NoiseReason.IMPLAUSIBLE_SPEED


def test_swapped_reports_reject_the_out_of_sequence_one(tracker):
    track = sail(1, n=10, speed_kn=20.0)
    track[5], track[6] = track[6], track[5]
    verdicts = run(tracker, track)
    rejected = [v.reason for v in verdicts if not v.accepted]
    assert rejected == [NoiseReason.IMPLAUSIBLE_SPEED]
    assert not verdicts[6].accepted


def test_exact_duplicate_position_is_rejected(tracker):
    track = sail(1, n=5)
    run(tracker, track)
    last = track[-1]
    verdict = tracker.process(PositionReport.of(1, last.pos.lon, last.pos.lat, last.tau + 60)).verdict
    assert verdict.reason is NoiseReason.DUPLICATE


def test_small_deviation_is_accepted(tracker):
    track = sail(1, n=6, speed_kn=10.0, heading=90.0)
    run(tracker, track)
    nxt = continue_from(track[-1], heading=95.0, speed_kn=10.5, n=1)[0]
    assert tracker.process(nxt).verdict.accepted


def test_abrupt_turn_is_rejected(tracker):
    track = sail(1, n=6, speed_kn=10.0, heading=90.0)
    run(tracker, track)
    nxt = continue_from(track[-1], heading=180.0, speed_kn=10.0, n=1)[0]
    assert tracker.process(nxt).verdict.reason is NoiseReason.ABRUPT_TURN


def test_off_course_needs_heading_and_speed_change(tracker_cfg):
    tracker = MobilityTracker(tracker_cfg, NoiseConfig(abrupt_turn_deg=179.0))
    track = sail(1, n=10, speed_kn=10.0, heading=90.0)
    run(tracker, track)
    turned_fast = continue_from(track[-1], heading=170.0, speed_kn=25.0, n=1)[0]
    assert tracker.process(turned_fast).verdict.reason is NoiseReason.OFF_COURSE


def test_same_timestamp_replaces_earlier_report(tracker):
    track = sail(1, n=6)
    run(tracker, track)
    last = track[-1]
    lon, lat = destination_lonlat(last.pos.lon, last.pos.lat, 90.0, 15.0)
    verdict = tracker.process(PositionReport.of(1, lon, lat, last.tau)).verdict
    assert verdict.accepted and verdict.retracts_previous
    assert tracker.accepted == 6
    assert tracker.rejections[NoiseReason.TIMESTAMP_CONFLICT] == 1
    assert tracker.state_of(1).last.pos.lon == pytest.approx(lon)


def test_identical_resend_is_a_duplicate(tracker):
    track = sail(1, n=6)
    run(tracker, track)
    verdict = tracker.process(track[-1]).verdict
    assert verdict.reason is NoiseReason.DUPLICATE
    assert tracker.accepted == 6


def test_same_timestamp_twin_replaces_an_emitted_gap(tracker):
    first = PositionReport.of(1, 24.0, 37.0, T0)
    after_gap = PositionReport.of(1, 24.01, 37.0, T0 + 700)
    tracker.process(first)
    assert len(tracker.process(after_gap).points) == 2
    twin = PositionReport.of(1, 24.0101, 37.0, T0 + 700)
    result = tracker.process(twin)
    assert result.verdict.accepted and result.verdict.retracts_previous
    assert [p.annotation for p in result.points] == [Annotation.GAP_START, Annotation.GAP_END]
    assert result.points[1].pos.lon == pytest.approx(24.0101)
    # the gap of the replaced report is gone, not doubled
    assert compress(tracker.state_of(1)).forwarded == result.points
    assert tracker.class_counts()[PointClass.GAP] == 2
    assert tracker.accepted == 2
    assert tracker.rejections[NoiseReason.TIMESTAMP_CONFLICT] == 1


def test_twin_in_a_later_batch_retracts_what_was_handed_over(tracker):
    first = PositionReport.of(1, 24.0, 37.0, T0)
    after_gap = PositionReport.of(1, 24.01, 37.0, T0 + 700)
    handed = tracker.process_batch([first, after_gap])
    replaced = tracker.process_batch([PositionReport.of(1, 24.0101, 37.0, T0 + 700)])
    assert tracker.take_retracted() == handed
    assert tracker.take_retracted() == []
    assert [p.annotation for p in replaced] == [Annotation.GAP_START, Annotation.GAP_END]
    assert replaced[1].pos != handed[1].pos


def test_twin_restores_the_vertex_it_turned(tracker):
    leg = sail(1, n=8, heading=90.0)
    turned = continue_from(leg[-1], heading=130.0, speed_kn=12.0, n=1)[0]
    assert [p.annotation for p in tracker.process_batch(leg + [turned])] == [Annotation.TURN]
    straight = continue_from(leg[-1], heading=90.0, speed_kn=12.0, n=1)[0]
    tracker.process(straight.model_copy(update={"tau": turned.tau}))
    assert tracker.take_retracted()[0].t_start == leg[-1].tau
    vertex = tracker.state_of(1).previous
    assert not vertex.critical and vertex.label is None
    assert tracker.class_counts()[PointClass.TURN] == 0


def test_acceptance_is_monotone_in_max_speed(tracker_cfg):
    track = sail(1, n=20, speed_kn=30.0)
    accepted = []
    for max_speed in (20.0, 40.0, 80.0):
        t = MobilityTracker(tracker_cfg, NoiseConfig(max_speed=max_speed))
        accepted.append(sum(1 for r in track if t.process(r).verdict.accepted))
    assert accepted == sorted(accepted)
