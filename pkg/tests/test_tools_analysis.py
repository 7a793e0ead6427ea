from datetime import datetime, timedelta, timezone

import numpy as np
import pytest

from gulfclimate.core import CanonicalRecord, CanonicalSeries, GeoPoint
from gulfclimate.tools.analysis import analyze_range
from gulfclimate.tools.errors import EmptyRange

DOHA = GeoPoint(25.2854, 51.5310)


def daily_series(values, variable="temperature", unit="°C"):
    start = datetime(2023, 1, 1, tzinfo=timezone.utc)
    records = tuple(
        CanonicalRecord(start + timedelta(days=i), variable, v, unit, DOHA, "Doha", "test")
        for i, v in enumerate(values)
    )
    return CanonicalSeries(records)


def brute_force_anomalies(values, threshold=3.0):
    """Independent z-score scan used as the oracle."""
    arr = np.asarray(values, dtype=float)
    mean = arr.mean()
    std = arr.std()
    if std == 0:
        return []
    return [i for i, v in enumerate(arr) if abs((v - mean) / std) > threshold]


def test_constant_series_degenerate_case():
    report = analyze_range(daily_series([21.5] * 30), kind="weather")
    assert report.std == 0.0
    assert report.slope_per_day == 0.0
    assert report.trend == "stable"
    assert report.anomalies == ()


def test_linear_series_unit_slope():
    report = analyze_range(daily_series([float(t) for t in range(60)]), kind="weather")
    assert report.slope_per_day == pytest.approx(1.0, abs=1e-9)
    assert report.trend == "increasing"


def test_injected_spike_matches_brute_force():
    rng = np.random.default_rng(11)
    values = list(rng.normal(25.0, 2.0, size=90))
    sigma = np.asarray(values).std()
    values[40] += 10.0 * sigma
    report = analyze_range(daily_series(values), kind="weather")
    flagged = [a.timestamp for a in report.anomalies]
    oracle = brute_force_anomalies(values)
    assert oracle == [40]
    assert flagged == [daily_series(values).records[40].timestamp]


def test_anomalies_equal_brute_force_on_random_series():
    rng = np.random.default_rng(5)
    for trial in range(10):
        values = list(rng.normal(0.0, 1.0, size=120))
        for spike_at in rng.integers(0, 120, size=2):
            values[int(spike_at)] += float(rng.choice([-1, 1])) * 8.0
        report = analyze_range(daily_series(values), kind="weather")
        series = daily_series(values)
        flagged = {a.timestamp for a in report.anomalies}
        oracle = {series.records[i].timestamp for i in brute_force_anomalies(values)}
        assert flagged == oracle


def test_aqi_exceedances():
    values = [80.0, 95.0, 120.0, 101.0, 99.9]
    report = analyze_range(daily_series(values, "aqi", "index"), kind="aqi")
    assert [e.value for e in report.exceedances] == [120.0, 101.0]


def test_rain_events_threshold():
    values = [0.0, 3.0, 14.5, 9.9, 22.0]
    report = analyze_range(daily_series(values, "precipitation", "mm"), kind="rain")
    assert [e.value for e in report.events] == [14.5, 22.0]


def test_stats_over_valid_points_only():
    start = datetime(2023, 1, 1, tzinfo=timezone.utc)
    records = [
        CanonicalRecord(start, "temperature", 10.0, "°C", DOHA),
        CanonicalRecord(start + timedelta(days=1), "temperature", None, "°C", DOHA),
        CanonicalRecord(start + timedelta(days=2), "temperature", 30.0, "°C", DOHA),
    ]
    report = analyze_range(CanonicalSeries(tuple(records)), kind="weather")
    assert report.count == 2
    assert report.mean == pytest.approx(20.0)


def test_empty_range_raises():
    start = datetime(2023, 1, 1, tzinfo=timezone.utc)
    records = (CanonicalRecord(start, "temperature", None, "°C", DOHA),)
    with pytest.raises(EmptyRange):
        analyze_range(CanonicalSeries(records), kind="weather")
