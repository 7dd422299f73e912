import pytest

from geostream.recognition.event_instance import EventInstance
from geostream.recognition.window import RecognitionWindow


def ev(tau: int, vessel: int = 1, name: str = "turn") -> EventInstance:
    return EventInstance(name=name, args=(vessel,), tau=tau)


def test_slide_must_not_exceed_range():
    with pytest.raises(ValueError):
        RecognitionWindow(600, 1200)
    with pytest.raises(ValueError):
        RecognitionWindow(600, 0)


def test_advance_returns_events_inside_the_range():
    w = RecognitionWindow(omega_s=1000, beta_s=500)
    w.ingest_all([ev(100), ev(900), ev(1500), ev(2100)])
    assert [e.tau for e in w.advance(1000)] == [100, 900]
    assert [e.tau for e in w.advance(1500)] == [900, 1500]
    assert [e.tau for e in w.advance(2000)] == [1500]
    assert len(w) == 2


def test_late_event_inside_the_next_range_is_kept():
    w = RecognitionWindow(omega_s=1000, beta_s=500)
    w.advance(2000)
    # next query is 2500, whose range starts after 1500
    assert w.horizon == 1500
    assert w.ingest(ev(1501))
    assert not w.ingest(ev(1500))
    assert w.dropped == 1
    assert [e.tau for e in w.advance(2500)] == [1501]


def test_duplicates_coalesce():
    w = RecognitionWindow(omega_s=1000, beta_s=500)
    assert w.ingest(ev(100))
    assert not w.ingest(ev(100))
    assert w.ingest(ev(100, vessel=2))
    assert w.ingest(ev(100, name="speedChange"))
    assert w.ingested == 3
    assert w.dropped == 0


def test_delayed_event_is_used_by_the_next_query():
    # a stop that ends at 1400 is only reported after the query at 1500
    w = RecognitionWindow(omega_s=1000, beta_s=500)
    w.ingest(ev(1300, name="gapStart"))
    first = w.advance(1500)
    assert [e.name for e in first] == ["gapStart"]
    w.ingest(EventInstance(name="stopped", args=(1,), tau=1400, since=900))
    second = w.advance(2000)
    assert [(e.name, e.tau) for e in second] == [("gapStart", 1300), ("stopped", 1400)]


def test_events_come_out_sorted():
    w = RecognitionWindow(omega_s=1000, beta_s=500)
    w.ingest_all([ev(300, vessel=2), ev(200, vessel=3), ev(300, vessel=1)])
    assert [(e.tau, e.vessel) for e in w.advance(1000)] == [(200, 3), (300, 1), (300, 2)]


def test_event_cannot_start_after_it_occurs():
    with pytest.raises(ValueError):
        EventInstance(name="stopped", args=(1,), tau=100, since=200)


def test_retracted_event_leaves_the_window():
    w = RecognitionWindow(omega_s=1000, beta_s=500)
    w.ingest_all([ev(100), ev(200)])
    assert w.retract(ev(100))
    assert not w.retract(ev(100))
    assert w.ingested == 1
    assert [e.tau for e in w.advance(500)] == [200]
    # a replacement with the same key is accepted again
    assert w.ingest(ev(100))
