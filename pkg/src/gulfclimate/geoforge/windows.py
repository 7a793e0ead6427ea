"""Fixed-length window segmentation with completeness filtering."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta

from ..core import CanonicalSeries, modal_cadence_seconds
from ..errors import GulfClimateError

DEFAULT_DELTA_DAYS = 90
DEFAULT_RHO = 0.8
TRAILING_SPAN_DAYS = 3650  # ten years


class WindowingError(GulfClimateError, ValueError):
    pass


@dataclass(frozen=True)
class WindowSpec:
    """One window ``[start, end)`` of a segmented series."""

    index: int
    start: datetime
    end: datetime
    delta_days: int
    completeness: float
    rho: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.completeness <= 1.0:
            raise WindowingError(f"completeness out of range: {self.completeness}")

    def contains(self, ts: datetime) -> bool:
        return self.start <= ts < self.end


def segment_windows(series: CanonicalSeries, delta_days: int = DEFAULT_DELTA_DAYS,
                    rho: float = DEFAULT_RHO) -> list[WindowSpec]:
    """Segment a series into consecutive non-overlapping windows.

    The anchor is the first timestamp inside the trailing ten-year span that
    ends at the last record. Windows are ``[anchor + t*delta, anchor +
    (t+1)*delta)``; a trailing remainder shorter than ``delta`` is discarded.
    Completeness is observed non-missing timesteps over the count expected at
    the series cadence (the modal inter-record gap); windows below ``rho``
    are dropped.
    """
    if len(series) == 0:
        raise WindowingError("series is empty")
    if not 0.0 < rho <= 1.0:
        raise WindowingError(f"rho must be in (0, 1]: {rho}")
    if delta_days <= 0:
        raise WindowingError(f"delta_days must be positive: {delta_days}")

    last = series.records[-1].timestamp
    horizon_start = last - timedelta(days=TRAILING_SPAN_DAYS)
    anchor = next(r.timestamp for r in series if r.timestamp >= horizon_start)
    span_end = last + _cadence(series)

    delta = timedelta(days=delta_days)
    kept: list[WindowSpec] = []
    t = 0
    while anchor + (t + 1) * delta <= span_end:
        start = anchor + t * delta
        end = start + delta
        completeness = _completeness(series, start, end)
        if completeness >= rho:
            kept.append(WindowSpec(index=t, start=start, end=end,
                                   delta_days=delta_days, completeness=completeness,
                                   rho=rho))
        t += 1
    return kept


def _cadence(series: CanonicalSeries) -> timedelta:
    seconds = modal_cadence_seconds(series.timestamps())
    if seconds is None or seconds <= 0:
        return timedelta(days=1)
    return timedelta(seconds=seconds)


def _completeness(series: CanonicalSeries, start: datetime, end: datetime) -> float:
    cadence = _cadence(series)
    expected = int((end - start) / cadence)
    if expected <= 0:
        return 0.0
    observed = sum(
        1 for r in series
        if start <= r.timestamp < end and not r.missing
    )
    return min(1.0, observed / expected)


def window_slice(series: CanonicalSeries, window: WindowSpec) -> CanonicalSeries:
    """The records of ``series`` falling inside ``window`` (missing included)."""
    return CanonicalSeries(tuple(r for r in series if window.contains(r.timestamp)))
