import pytest

from geostream.tracking.critical_point import Annotation, CriticalPoint
from geostream.tracking.mobility_tracker import MobilityTracker, TrackerConfig, compress
from geostream.tracking.noise_filter import NoiseConfig
from geostream.tracking.position_report import PositionReport
from geostream.tracking.vessel_state import InstantFlags, PointClass
from tests.tracks import T0, anchor, continue_from, sail


def feed(tracker, reports):
    out = []
    for r in reports:
        out.extend(tracker.process(r).points)
    return out


def annotations(points):
    return [p.annotation for p in points]


def test_steady_course_sets_no_bits(tracker):
    feed(tracker, sail(1, n=5, speed_kn=10.0))
    assert tracker.state_of(1).last.flags == InstantFlags.NONE


def test_speed_up_sets_speed_change_bit(tracker):
    track = sail(1, n=5, speed_kn=10.0)
    feed(tracker, track + continue_from(track[-1], 90.0, 14.0, 1))
    assert tracker.state_of(1).last.flags & InstantFlags.SPEED_CHANGE


def test_heading_change_sets_turn_bit(tracker):
    track = sail(1, n=5, heading=10.0)
    feed(tracker, track + continue_from(track[-1], 30.0, 12.0, 1))
    assert tracker.state_of(1).last.flags & InstantFlags.TURN


def test_resting_vessel_sets_pause_bit(tracker):
    points = feed(tracker, anchor(1, (24.0, 37.0), 3, T0))
    flags = tracker.state_of(1).last.flags
    assert flags & InstantFlags.PAUSE
    # the swing turns 90 degrees per report; the bit is set but never confirmed
    assert flags & InstantFlags.TURN
    assert points == []


def test_slow_speed_change_sets_the_bit_without_an_event(tracker):
    track = anchor(1, (24.0, 37.0), 3, T0)
    track += continue_from(track[-1], 90.0, 0.5, 1)
    points = feed(tracker, track)
    assert tracker.state_of(1).last.flags & InstantFlags.SPEED_CHANGE
    assert points == []


def test_gap_emits_both_ends(tracker):
    points = feed(tracker, [PositionReport.of(1, 24.0, 37.0, T0), PositionReport.of(1, 24.01, 37.0, T0 + 660)])
    assert [(p.annotation, p.t_start) for p in points] == [
        (Annotation.GAP_START, T0),
        (Annotation.GAP_END, T0 + 660),
    ]
    assert points[0].pos.lon == 24.0


def test_silence_of_exactly_the_gap_period_is_no_gap(tracker):
    points = feed(tracker, [PositionReport.of(1, 24.0, 37.0, T0), PositionReport.of(1, 24.01, 37.0, T0 + 600)])
    assert Annotation.GAP_START not in annotations(points)


def test_anchorage_becomes_one_stopped_point(tracker):
    track = sail(1, n=20)
    stay = anchor(1, track[-1].pos.as_tuple(), 10, track[-1].tau + 60)
    leave = continue_from(stay[-1], 90.0, 12.0, 20)
    points = feed(tracker, track + stay + leave)
    stops = [p for p in points if p.annotation is Annotation.STOPPED]
    assert len(stops) == 1
    stop = stops[0]
    # the stop begins where the vessel arrived, one report before the first pause
    assert (stop.t_start, stop.t_end) == (track[-1].tau, stay[-1].tau)
    assert abs(stop.pos.lat - track[-1].pos.lat) < 1e-4


def test_nine_pauses_are_not_a_stop(tracker):
    track = sail(1, n=20)
    stay = anchor(1, track[-1].pos.as_tuple(), 9, track[-1].tau + 60)
    leave = continue_from(stay[-1], 90.0, 12.0, 5)
    points = feed(tracker, track + stay + leave)
    assert Annotation.STOPPED not in annotations(points)


def test_slow_drift_is_low_speed(tracker):
    track = sail(1, n=10, speed_kn=12.0)
    slow = continue_from(track[-1], 90.0, 0.9, 25)
    fast = continue_from(slow[-1], 90.0, 12.0, 5)
    points = feed(tracker, track + slow + fast)
    start = [p for p in points if p.annotation is Annotation.LOW_SPEED_START]
    end = [p for p in points if p.annotation is Annotation.LOW_SPEED_END]
    assert [p.t_start for p in start] == [track[-1].tau]
    assert [p.t_start for p in end] == [slow[-1].tau]
    assert Annotation.STOPPED not in annotations(points)


def test_straight_track_leaves_no_critical_point(tracker):
    assert tracker.process_batch(sail(1, n=100)) == []
    assert tracker.evicted == 90


def test_sharp_turn_keeps_exactly_the_turning_point(tracker):
    leg1 = sail(1, n=20, heading=90.0)
    leg2 = continue_from(leg1[-1], 120.0, 12.0, 20)
    points = tracker.process_batch(leg1 + leg2)
    assert [(p.annotation, p.t_start) for p in points] == [(Annotation.TURN, leg1[-1].tau)]
    assert points[0].pos == leg1[-1].pos
    assert points[0].velocity.heading == pytest.approx(120.0, abs=0.5)


def test_smooth_turn_emits_the_participating_points(tracker):
    leg1 = sail(1, n=15, heading=90.0)
    bend = []
    last = leg1[-1]
    for k in range(1, 6):
        nxt = continue_from(last, 90.0 + 4.0 * k, 12.0, 1)[0]
        bend.append(nxt)
        last = nxt
    leg2 = continue_from(last, 110.0, 12.0, 10)
    points = tracker.process_batch(leg1 + bend + leg2)
    turns = [p for p in points if p.annotation is Annotation.TURN]
    # every vertex where the course bends, and none on the straight legs
    assert {p.t_start for p in turns} == {leg1[-1].tau} | {r.tau for r in bend[:-1]}


def test_speed_change_against_the_mean(tracker):
    track = sail(1, n=15, speed_kn=10.0)
    faster = continue_from(track[-1], 90.0, 16.0, 10)
    points = tracker.process_batch(track + faster)
    assert (Annotation.SPEED_CHANGE, track[-1].tau) in [(p.annotation, p.t_start) for p in points]


def test_every_critical_point_has_one_annotation_and_valid_span(tracker):
    track = sail(1, n=20)
    stay = anchor(1, track[-1].pos.as_tuple(), 12, track[-1].tau + 60)
    rest = continue_from(stay[-1], 45.0, 12.0, 20)
    for p in tracker.process_batch(track + stay + rest):
        assert isinstance(p.annotation, Annotation)
        assert p.t_start <= p.t_end
        assert p.t_start == p.t_end or p.annotation is Annotation.STOPPED


def test_compress_hands_over_pending_points_once(tracker):
    feed(tracker, [PositionReport.of(1, 24.0, 37.0, T0), PositionReport.of(1, 24.01, 37.0, T0 + 900)])
    state = tracker.state_of(1)
    assert len(compress(state).forwarded) == 2
    assert compress(state).forwarded == []


def test_labels_partition_accepted_points(tracker):
    track = sail(1, n=20)
    stay = anchor(1, track[-1].pos.as_tuple(), 10, track[-1].tau + 60)
    leave = continue_from(stay[-1], 90.0, 12.0, 5)
    tracker.process_batch(track + stay + leave)
    counts = tracker.class_counts()
    # the arrival point was already labelled by the slow-down
    assert counts[PointClass.SPEED_CHANGE] == 1
    assert counts[PointClass.STOP] == 10
    assert sum(counts.values()) <= tracker.accepted


def test_batches_equal_one_stream(tracker_cfg, noise_cfg):
    track = sail(1, n=30)
    stay = anchor(1, track[-1].pos.as_tuple(), 15, track[-1].tau + 60)
    reports = track + stay + continue_from(stay[-1], 180.0, 11.0, 30)
    whole = MobilityTracker(tracker_cfg, noise_cfg).process_batch(reports)
    split = MobilityTracker(tracker_cfg, noise_cfg)
    pieces = [split.process_batch(reports[i:i + 7]) for i in range(0, len(reports), 7)]
    assert [p for piece in pieces for p in piece] == whole


def test_critical_point_rejects_span_on_instant_annotation():
    with pytest.raises(ValueError):
        CriticalPoint(mmsi=1, t_start=10, t_end=20, pos={"lon": 24, "lat": 37}, annotation=Annotation.TURN)


def test_long_anchorage_is_summarized_piecewise(noise_cfg):
    tracker = MobilityTracker(TrackerConfig(max_idle_run=20), noise_cfg)
    track = sail(1, n=20)
    stay = anchor(1, track[-1].pos.as_tuple(), 50, track[-1].tau + 60)
    points = []
    for r in track + stay:
        points.extend(tracker.process(r).points)
        assert len(tracker.state_of(1).run) < 20
    stops = [(p.t_start, p.t_end) for p in points if p.annotation is Annotation.STOPPED]
    assert stops == [(track[-1].tau, stay[19].tau), (stay[19].tau, stay[39].tau)]


def test_idle_run_cap_must_hold_a_stop():
    with pytest.raises(ValueError):
        TrackerConfig(m_window=10, max_idle_run=9)
