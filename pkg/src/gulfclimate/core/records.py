"""Canonical observation records, series, and provenance."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime
from typing import Iterable, Sequence

from ..errors import GulfClimateError
from .geo import GeoPoint
from .timeutil import UTC
from .units import default_table


class RecordValidationError(GulfClimateError, ValueError):
    """A record or series violates the canonical-schema invariants."""


@dataclass(frozen=True)
class Provenance:
    """Where a piece of evidence came from and how it was retrieved."""

    retrieved_at: datetime
    query: str = ""
    url: str | None = None
    title: str | None = None
    organization: str | None = None
    published: str | None = None

    def __post_init__(self) -> None:
        if self.retrieved_at.tzinfo is None:
            object.__setattr__(self, "retrieved_at", self.retrieved_at.replace(tzinfo=UTC))
        if self.url is None and self.title is None:
            raise RecordValidationError("provenance needs at least one of url/title")


@dataclass(frozen=True)
class CanonicalRecord:
    """One unit- and time-normalized observation.

    ``value`` is a finite real, or ``None`` for an explicitly missing
    observation. ``unit`` must be the canonical unit for ``variable``.
    """

    timestamp: datetime
    variable: str
    value: float | None
    unit: str
    location: GeoPoint
    city: str | None = None
    source: str = ""

    def __post_init__(self) -> None:
        ts = self.timestamp
        if ts.tzinfo is None or ts.utcoffset().total_seconds() != 0.0:
            raise RecordValidationError(f"timestamp must be UTC: {ts!r}")
        if self.value is not None:
            v = float(self.value)
            if not math.isfinite(v):
                raise RecordValidationError(f"non-finite value: {self.value}")
            object.__setattr__(self, "value", v)
        canonical = default_table().canonical_unit(self.variable)
        if self.unit != canonical:
            raise RecordValidationError(
                f"unit {self.unit!r} is not canonical for {self.variable!r} (expected {canonical!r})"
            )

    @property
    def missing(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class CanonicalSeries:
    """A time-ordered run of records sharing variable, unit, and location."""

    records: tuple[CanonicalRecord, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        records = tuple(self.records)
        object.__setattr__(self, "records", records)
        for a, b in zip(records, records[1:]):
            if not b.timestamp > a.timestamp:
                raise RecordValidationError(
                    f"timestamps not strictly increasing at {a.timestamp} -> {b.timestamp}"
                )
            if (a.variable, a.unit, a.location) != (b.variable, b.unit, b.location):
                raise RecordValidationError("series mixes variable/unit/location")

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def variable(self) -> str | None:
        return self.records[0].variable if self.records else None

    @property
    def unit(self) -> str | None:
        return self.records[0].unit if self.records else None

    @property
    def location(self) -> GeoPoint | None:
        return self.records[0].location if self.records else None

    @property
    def city(self) -> str | None:
        return self.records[0].city if self.records else None

    def timestamps(self) -> tuple[datetime, ...]:
        return tuple(r.timestamp for r in self.records)

    def values(self) -> tuple[float | None, ...]:
        return tuple(r.value for r in self.records)

    def present(self) -> "CanonicalSeries":
        """The sub-series with all explicit-missing records removed."""
        return CanonicalSeries(tuple(r for r in self.records if not r.missing))

    def span(self) -> tuple[datetime, datetime] | None:
        if not self.records:
            return None
        return (self.records[0].timestamp, self.records[-1].timestamp)

    @classmethod
    def build(cls, records: Iterable[CanonicalRecord]) -> "CanonicalSeries":
        return cls(tuple(records))


def modal_cadence_seconds(timestamps: Sequence[datetime]) -> float | None:
    """The most common inter-record gap, used as the series cadence."""
    if len(timestamps) < 2:
        return None
    gaps: dict[float, int] = {}
    for a, b in zip(timestamps, timestamps[1:]):
        g = (b - a).total_seconds()
        gaps[g] = gaps.get(g, 0) + 1
    return max(sorted(gaps), key=lambda g: gaps[g])
