"""Date-range analysis over canonical series: stats, trend, flagged points."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime

import numpy as np

from ..core import CanonicalSeries
from .errors import EmptyRange

DEFAULT_Z_THRESHOLD = 3.0
DEFAULT_AQI_EXCEEDANCE = 100.0
DEFAULT_RAIN_EVENT_MM = 10.0

TREND_EPS = 1e-12


@dataclass(frozen=True)
class FlaggedPoint:
    timestamp: datetime
    value: float
    score: float  # z-score for anomalies; raw value for exceedances/events


@dataclass(frozen=True)
class AnalysisReport:
    """Summary statistics, least-squares trend, and flagged points."""

    kind: str  # weather | rain | aqi
    variable: str
    unit: str
    start: datetime
    end: datetime
    count: int
    vmin: float
    vmax: float
    mean: float
    std: float
    slope_per_day: float
    trend: str  # increasing | decreasing | stable
    anomalies: tuple[FlaggedPoint, ...] = ()
    exceedances: tuple[FlaggedPoint, ...] = ()
    events: tuple[FlaggedPoint, ...] = ()
    thresholds: dict = field(default_factory=dict)


def analyze_range(series: CanonicalSeries, kind: str,
                  z_threshold: float = DEFAULT_Z_THRESHOLD,
                  aqi_exceedance: float = DEFAULT_AQI_EXCEEDANCE,
                  rain_event_mm: float = DEFAULT_RAIN_EVENT_MM) -> AnalysisReport:
    """Analyze the valid points of a series over its span.

    Statistics use the population std (ddof=0). The trend slope is the
    least-squares line against days since the first valid record. Anomalies
    are points with |z| > ``z_threshold`` against the range mean/std; a
    zero-std range has no anomalies. ``aqi`` ranges also flag exceedances
    above ``aqi_exceedance``; ``rain`` ranges flag heavy-rain events above
    ``rain_event_mm``.
    """
    present = series.present()
    if len(present) == 0:
        raise EmptyRange("no valid observations in range")
    timestamps = present.timestamps()
    values = np.asarray([r.value for r in present], dtype=np.float64)
    start = timestamps[0]
    days = np.asarray([(t - start).total_seconds() / 86400.0 for t in timestamps])

    mean = float(values.mean())
    std = float(values.std())
    if len(values) >= 2 and float(np.ptp(days)) > 0.0:
        centered = days - days.mean()
        slope = float(np.dot(centered, values - mean) / np.dot(centered, centered))
    else:
        slope = 0.0
    if slope > TREND_EPS:
        trend = "increasing"
    elif slope < -TREND_EPS:
        trend = "decreasing"
    else:
        trend = "stable"

    anomalies: list[FlaggedPoint] = []
    if std > 0.0:
        z = (values - mean) / std
        for ts, v, score in zip(timestamps, values, z):
            if abs(score) > z_threshold:
                anomalies.append(FlaggedPoint(timestamp=ts, value=float(v), score=float(score)))

    exceedances: list[FlaggedPoint] = []
    events: list[FlaggedPoint] = []
    if kind == "aqi":
        exceedances = [FlaggedPoint(ts, float(v), float(v))
                       for ts, v in zip(timestamps, values) if v > aqi_exceedance]
    elif kind == "rain":
        events = [FlaggedPoint(ts, float(v), float(v))
                  for ts, v in zip(timestamps, values) if v > rain_event_mm]

    return AnalysisReport(
        kind=kind,
        variable=present.variable or "",
        unit=present.unit or "",
        start=timestamps[0],
        end=timestamps[-1],
        count=len(values),
        vmin=float(values.min()),
        vmax=float(values.max()),
        mean=mean,
        std=std,
        slope_per_day=slope,
        trend=trend,
        anomalies=tuple(anomalies),
        exceedances=tuple(exceedances),
        events=tuple(events),
        thresholds={"z": z_threshold, "aqi": aqi_exceedance, "rain_mm": rain_event_mm},
    )
