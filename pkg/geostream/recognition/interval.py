"""
interval.py – maximal intervals of fluents under the law of inertia.

Intervals are closed-open [start, end); end=None marks an interval that is
still open at the query time. A termination only ends a fluent when it comes
strictly after the initiation, so an initiation and a termination at the same
time point leave the fluent holding.
"""

from __future__ import annotations

import bisect
from typing import Iterable, Iterator, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, model_validator

from geostream.geo import Timestamp


class Interval(BaseModel):
    model_config = ConfigDict(frozen=True)

    start: Timestamp
    end: Optional[Timestamp] = None

    @model_validator(mode="after")
    def _non_empty(self) -> "Interval":
        if self.end is not None and self.end <= self.start:
            raise ValueError(f"empty interval [{self.start}, {self.end})")
        return self

    @property
    def is_open(self) -> bool:
        return self.end is None

    def contains(self, t: int) -> bool:
        return self.start <= t and (self.end is None or t < self.end)

    def truncated(self, q: int) -> "Interval":
        """Open intervals end at q when reported."""
        if self.end is None and q > self.start:
            return Interval(start=self.start, end=q)
        return self

    def __str__(self) -> str:
        return f"[{self.start},{'inf' if self.end is None else self.end})"


def _end(iv: Interval) -> float:
    return float("inf") if iv.end is None else iv.end


class MaximalIntervalList(BaseModel):
    """Sorted, pairwise disjoint, non-adjacent intervals; only the last may be open."""

    model_config = ConfigDict(frozen=True)

    intervals: List[Interval] = []

    @model_validator(mode="after")
    def _maximal(self) -> "MaximalIntervalList":
        for a, b in zip(self.intervals, self.intervals[1:]):
            if a.end is None or a.end >= b.start:
                raise ValueError(f"intervals {a} and {b} overlap or touch")
        return self

    @classmethod
    def of(cls, *pairs) -> "MaximalIntervalList":
        return cls(intervals=[Interval(start=s, end=e) for s, e in pairs])

    def __iter__(self) -> Iterator[Interval]:  # type: ignore[override]
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __getitem__(self, i: int) -> Interval:
        return self.intervals[i]

    def as_pairs(self) -> List[tuple]:
        return [(iv.start, iv.end) for iv in self.intervals]

    def holds_at(self, t: int) -> bool:
        i = bisect.bisect_right([iv.start for iv in self.intervals], t) - 1
        return i >= 0 and self.intervals[i].contains(t)

    def truncated(self, q: int) -> "MaximalIntervalList":
        return MaximalIntervalList(intervals=[iv.truncated(q) for iv in self.intervals if iv.start < q or iv.end is not None])


EMPTY = MaximalIntervalList()


def holds_for(inits: Iterable[int], terms: Iterable[int], window: Optional[tuple] = None) -> MaximalIntervalList:
    """
    Each initiation opens an interval that the earliest later termination
    closes; initiations inside an open interval are absorbed. window=(lo, hi)
    keeps only evidence with lo < t <= hi.
    """
    if window is not None:
        lo, hi = window
        inits = (t for t in inits if lo < t <= hi)
        terms = (t for t in terms if lo < t <= hi)
    starts = sorted(set(inits))
    ends = sorted(set(terms))
    out: List[Interval] = []
    i, n = 0, len(starts)
    while i < n:
        start = cur = starts[i]
        end: Optional[int] = None
        i = n
        while True:
            j = bisect.bisect_right(ends, cur)
            if j == len(ends):
                break
            t = ends[j]
            k = bisect.bisect_left(starts, t)
            if k < n and starts[k] == t:
                # re-initiated at the termination point
                cur = t
                continue
            end, i = t, k
            break
        out.append(Interval(start=start, end=end))
    return MaximalIntervalList(intervals=out)


def holds_at(fluent: MaximalIntervalList, t: int) -> bool:
    return fluent.holds_at(t)


def _intersect(a: Sequence[Interval], b: Sequence[Interval]) -> List[Interval]:
    out: List[Interval] = []
    i = j = 0
    while i < len(a) and j < len(b):
        s = max(a[i].start, b[j].start)
        e = min(_end(a[i]), _end(b[j]))
        if s < e:
            out.append(Interval(start=s, end=None if e == float("inf") else int(e)))
        if _end(a[i]) < _end(b[j]):
            i += 1
        else:
            j += 1
    return out


def intersect_all(lists: Sequence[MaximalIntervalList], window: Optional[Interval] = None) -> MaximalIntervalList:
    """Pointwise conjunction; with no operand the window itself is returned."""
    if not lists:
        if window is None:
            raise ValueError("intersect_all of nothing needs a window")
        return MaximalIntervalList(intervals=[window])
    acc = list(lists[0].intervals)
    for other in lists[1:]:
        if not acc:
            break
        acc = _intersect(acc, other.intervals)
    if window is not None:
        acc = _intersect(acc, [window])
    return MaximalIntervalList(intervals=acc)


def union_all(lists: Iterable[MaximalIntervalList]) -> MaximalIntervalList:
    """Pointwise disjunction; overlapping or touching intervals coalesce."""
    ivs = sorted((iv for lst in lists for iv in lst), key=lambda iv: iv.start)
    out: List[Interval] = []
    for iv in ivs:
        if out and _end(out[-1]) >= iv.start:
            last = out[-1]
            end = None if last.end is None or iv.end is None else max(last.end, iv.end)
            out[-1] = Interval(start=last.start, end=end)
        else:
            out.append(iv)
    return MaximalIntervalList(intervals=out)


def start_points(fluent: MaximalIntervalList) -> List[int]:
    return [iv.start for iv in fluent]


def end_points(fluent: MaximalIntervalList) -> List[int]:
    return [iv.end for iv in fluent if iv.end is not None]
