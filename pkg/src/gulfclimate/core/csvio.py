"""The universal CSV schema shared by every pipeline stage.

Header: ``timestamp,variable,value,unit,lat,lon,city,source``. Missing values
serialize as an empty field. Floats are written with ``repr`` so the file
round-trips bit-exactly. Dialect: comma separator, UTF-8, LF line endings,
quoting only for fields that need it.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import IO

from ..errors import GulfClimateError
from .geo import GeoPoint
from .records import CanonicalRecord, CanonicalSeries
from .timeutil import format_timestamp, parse_utc

HEADER = ("timestamp", "variable", "value", "unit", "lat", "lon", "city", "source")


class SinkFailure(GulfClimateError, OSError):
    """Writing to or reading from the CSV sink failed."""


class CsvSchemaError(GulfClimateError, ValueError):
    """Input does not match the canonical CSV schema."""


def _fmt(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def write_canonical_csv(series: CanonicalSeries, sink: IO[str] | str | Path) -> int:
    """Write ``series`` to ``sink`` and return the number of data rows."""
    if isinstance(sink, (str, Path)):
        try:
            with open(sink, "w", encoding="utf-8", newline="") as fh:
                return write_canonical_csv(series, fh)
        except OSError as exc:
            raise SinkFailure(str(exc)) from exc
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(HEADER)
        count = 0
        for rec in series:
            writer.writerow([
                format_timestamp(rec.timestamp),
                rec.variable,
                _fmt(rec.value),
                rec.unit,
                repr(rec.location.lat),
                repr(rec.location.lon),
                rec.city or "",
                rec.source,
            ])
            count += 1
        return count
    except OSError as exc:
        raise SinkFailure(str(exc)) from exc


def series_to_csv(series: CanonicalSeries) -> str:
    buf = io.StringIO()
    write_canonical_csv(series, buf)
    return buf.getvalue()


def read_canonical_csv(source: IO[str] | str | Path) -> CanonicalSeries:
    """Read a canonical CSV back into a validated series."""
    if isinstance(source, (str, Path)):
        try:
            with open(source, "r", encoding="utf-8", newline="") as fh:
                return read_canonical_csv(fh)
        except OSError as exc:
            raise SinkFailure(str(exc)) from exc
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise CsvSchemaError("empty input, header row required") from None
    if tuple(header) != HEADER:
        raise CsvSchemaError(f"unexpected header: {header}")
    records = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(HEADER):
            raise CsvSchemaError(f"row {lineno}: expected {len(HEADER)} fields, got {len(row)}")
        ts, variable, value_s, unit, lat_s, lon_s, city, source_id = row
        records.append(CanonicalRecord(
            timestamp=parse_utc(ts),
            variable=variable,
            value=None if value_s == "" else float(value_s),
            unit=unit,
            location=GeoPoint(lat=float(lat_s), lon=float(lon_s)),
            city=city or None,
            source=source_id,
        ))
    return CanonicalSeries(tuple(records))


def series_from_csv(text: str) -> CanonicalSeries:
    return read_canonical_csv(io.StringIO(text))
