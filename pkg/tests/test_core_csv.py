import io
import random
from datetime import datetime, timedelta, timezone

import pytest

from gulfclimate.core import (
    CanonicalRecord,
    CanonicalSeries,
    GeoPoint,
    RecordValidationError,
    read_canonical_csv,
    series_from_csv,
    series_to_csv,
    write_canonical_csv,
)

DOHA = GeoPoint(25.2854, 51.5310)


def _series(n, variable="temperature", unit="°C", missing_every=None, seed=7):
    rng = random.Random(seed)
    start = datetime(2020, 1, 1, tzinfo=timezone.utc)
    records = []
    for i in range(n):
        missing = missing_every is not None and i % missing_every == 0
        records.append(CanonicalRecord(
            timestamp=start + timedelta(days=i),
            variable=variable,
            value=None if missing else rng.uniform(-40.0, 55.0),
            unit=unit,
            location=DOHA,
            city="Doha",
            source="unit-test",
        ))
    return CanonicalSeries(tuple(records))


def test_empty_series_header_only():
    buf = io.StringIO()
    count = write_canonical_csv(CanonicalSeries(), buf)
    assert count == 0
    assert buf.getvalue() == "timestamp,variable,value,unit,lat,lon,city,source\n"


def test_row_count_matches_records():
    buf = io.StringIO()
    assert write_canonical_csv(_series(3), buf) == 3
    assert len(buf.getvalue().splitlines()) == 4


def test_round_trip_thousand_random_records():
    series = _series(1000, missing_every=17)
    back = series_from_csv(series_to_csv(series))
    assert back == series


def test_missing_value_serializes_empty_field():
    series = _series(2, missing_every=1)
    lines = series_to_csv(series).splitlines()
    assert lines[1].split(",")[2] == ""


def test_lf_line_endings():
    text = series_to_csv(_series(5))
    assert "\r" not in text


def test_round_trip_via_file(tmp_path):
    series = _series(20)
    path = tmp_path / "series.csv"
    write_canonical_csv(series, path)
    assert read_canonical_csv(path) == series


def test_reject_out_of_order_timestamps():
    t = datetime(2020, 1, 2, tzinfo=timezone.utc)
    recs = [
        CanonicalRecord(t, "temperature", 1.0, "°C", DOHA),
        CanonicalRecord(t - timedelta(days=1), "temperature", 2.0, "°C", DOHA),
    ]
    with pytest.raises(RecordValidationError):
        CanonicalSeries(tuple(recs))


def test_reject_duplicate_timestamps():
    t = datetime(2020, 1, 2, tzinfo=timezone.utc)
    recs = [
        CanonicalRecord(t, "temperature", 1.0, "°C", DOHA),
        CanonicalRecord(t, "temperature", 2.0, "°C", DOHA),
    ]
    with pytest.raises(RecordValidationError):
        CanonicalSeries(tuple(recs))


def test_reject_non_canonical_unit():
    with pytest.raises(RecordValidationError):
        CanonicalRecord(
            datetime(2020, 1, 1, tzinfo=timezone.utc), "temperature", 300.0, "K", DOHA
        )


def test_reject_mixed_variables():
    t = datetime(2020, 1, 1, tzinfo=timezone.utc)
    recs = [
        CanonicalRecord(t, "temperature", 1.0, "°C", DOHA),
        CanonicalRecord(t + timedelta(days=1), "precipitation", 2.0, "mm", DOHA),
    ]
    with pytest.raises(RecordValidationError):
        CanonicalSeries(tuple(recs))
