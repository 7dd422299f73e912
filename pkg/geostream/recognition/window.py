"""
window.py – buffered events for continuous queries at Q1, Q2, ... every beta.

An event that arrives late is still used as long as it falls inside the
range of the next query; everything at or before Q - omega is discarded.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, List, Optional

from geostream.recognition.event_instance import EventInstance

logger = logging.getLogger(__name__)


class RecognitionWindow:
    def __init__(self, omega_s: int, beta_s: int):
        if not 0 < beta_s <= omega_s:
            raise ValueError(f"need 0 < slide ({beta_s}) <= range ({omega_s})")
        self.omega_s = omega_s
        self.beta_s = beta_s
        self.q_time: Optional[int] = None
        self._events: Dict[tuple, EventInstance] = {}
        self.ingested = 0
        self.dropped = 0

    @property
    def horizon(self) -> Optional[int]:
        """Events at or before this time can no longer reach any query."""
        if self.q_time is None:
            return None
        return self.q_time + self.beta_s - self.omega_s

    def ingest(self, event: EventInstance) -> bool:
        """Buffer an event; duplicates coalesce and hopelessly late ones are dropped."""
        h = self.horizon
        if h is not None and event.tau <= h:
            self.dropped += 1
            logger.debug("dropping %s at %s: at or before horizon %s", event.name, event.tau, h)
            return False
        key = event.key()
        if key in self._events:
            return False
        self._events[key] = event
        self.ingested += 1
        return True

    def ingest_all(self, events: Iterable[EventInstance]) -> int:
        return sum(1 for e in events if self.ingest(e))

    def retract(self, event: EventInstance) -> bool:
        """Forget an event whose critical point was replaced."""
        if self._events.pop(event.key(), None) is None:
            return False
        self.ingested -= 1
        return True

    def advance(self, q: int) -> List[EventInstance]:
        """Move to query time q and return the events in (q - omega, q]."""
        self.q_time = q
        lo = q - self.omega_s
        for key in [k for k, e in self._events.items() if e.tau <= lo]:
            del self._events[key]
        return self.events()

    def events(self) -> List[EventInstance]:
        if self.q_time is None:
            return sorted(self._events.values(), key=EventInstance.sort_key)
        lo, hi = self.q_time - self.omega_s, self.q_time
        return sorted((e for e in self._events.values() if lo < e.tau <= hi), key=EventInstance.sort_key)

    def __len__(self) -> int:
        return len(self._events)


def ingest(event: EventInstance, window: RecognitionWindow) -> bool:
    return window.ingest(event)
