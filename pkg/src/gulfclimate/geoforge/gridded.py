"""Gridded-product fixture files and per-cell series extraction.

Format (``gridded-fixture v1``): a plain-text header of ``key: value`` lines
(variable, unit, cadence, source, retrieved, grid axes), a ``---`` separator,
then one row per observation ``date,i,j,value`` where an empty value marks an
explicitly missing timestep. The extraction math is identical whatever
product the file stands in for.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime, timedelta
from pathlib import Path

from ..core import (
    CanonicalRecord,
    CanonicalSeries,
    GridSpec,
    Provenance,
    default_table,
    normalize_timestamp,
    parse_utc,
)
from ..errors import GulfClimateError

FORMAT_TAG = "gridded-fixture v1"

# v1 rows are date-keyed, so only daily cadence is representable.
CADENCES = {"daily": timedelta(days=1)}


class GriddedFormatError(GulfClimateError, ValueError):
    pass


class VariableAbsent(GulfClimateError, KeyError):
    """The product does not carry the requested variable."""


@dataclass(frozen=True)
class GriddedProduct:
    """One variable of one product on one grid, loaded fully in memory."""

    variable: str
    unit: str
    cadence: str
    grid: GridSpec
    source: str
    retrieved_at: datetime
    cells: dict  # (i, j) -> {date: value | None}

    @classmethod
    def from_text(cls, text: str, source_name: str = "gridded-fixture") -> "GriddedProduct":
        lines = text.splitlines()
        if not lines or lines[0].strip() != f"# {FORMAT_TAG}":
            raise GriddedFormatError(f"missing format tag '# {FORMAT_TAG}'")
        header: dict[str, str] = {}
        body_start = None
        for idx, line in enumerate(lines[1:], start=1):
            stripped = line.strip()
            if stripped == "---":
                body_start = idx + 1
                break
            if not stripped or stripped.startswith("#"):
                continue
            if ":" not in stripped:
                raise GriddedFormatError(f"bad header line: {line!r}")
            key, _, value = stripped.partition(":")
            header[key.strip()] = value.strip()
        if body_start is None:
            raise GriddedFormatError("missing '---' separator")
        for required in ("variable", "unit", "cadence", "lats", "lons"):
            if required not in header:
                raise GriddedFormatError(f"missing header field {required!r}")
        if header["cadence"] not in CADENCES:
            raise GriddedFormatError(f"unsupported cadence {header['cadence']!r}")
        grid = GridSpec(
            lats=tuple(float(v) for v in header["lats"].split(",")),
            lons=tuple(float(v) for v in header["lons"].split(",")),
            resolution_deg=float(header.get("resolution_deg", "0.1")),
        )
        cells: dict[tuple[int, int], dict[date, float | None]] = {}
        for lineno, line in enumerate(lines[body_start:], start=body_start + 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split(",")
            if len(parts) != 4:
                raise GriddedFormatError(f"line {lineno}: expected date,i,j,value")
            d = date.fromisoformat(parts[0])
            i, j = int(parts[1]), int(parts[2])
            if not (0 <= i < len(grid.lats) and 0 <= j < len(grid.lons)):
                raise GriddedFormatError(f"line {lineno}: cell ({i}, {j}) outside grid")
            value = None if parts[3] == "" else float(parts[3])
            cells.setdefault((i, j), {})[d] = value
        retrieved = header.get("retrieved", "1970-01-01T00:00:00Z")
        return cls(
            variable=header["variable"], unit=header["unit"],
            cadence=header["cadence"], grid=grid,
            source=header.get("source", source_name),
            retrieved_at=parse_utc(retrieved),
            cells=cells,
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "GriddedProduct":
        path = Path(path)
        return cls.from_text(path.read_text(encoding="utf-8"), source_name=path.stem)

    def provenance(self, cell: tuple[int, int]) -> Provenance:
        return Provenance(
            retrieved_at=self.retrieved_at,
            query=f"{self.source}/{self.variable}/cell{cell}",
            title=f"{self.source} {self.variable} grid cell {cell}",
            organization=self.source,
        )


def extract_series(product: GriddedProduct, cell: tuple[int, int], variable: str,
                   city: str | None = None) -> CanonicalSeries:
    """The unit/time-normalized series at one grid cell.

    Covers the full calendar between the cell's first and last observations
    at the product cadence; timesteps without data become explicit-missing
    records so completeness fractions stay computable.
    """
    if variable != product.variable:
        raise VariableAbsent(
            f"product carries {product.variable!r}, not {variable!r}"
        )
    observations = product.cells.get(tuple(cell))
    if not observations:
        raise VariableAbsent(f"cell {tuple(cell)} has no data")
    location = product.grid.point(cell[0], cell[1])
    table = default_table()
    canonical_unit = table.canonical_unit(variable)
    step = CADENCES[product.cadence]
    first = min(observations)
    last = max(observations)
    records = []
    current = first
    while current <= last:
        raw = observations.get(current)
        if raw is None:
            value = None
        else:
            value, _ = table.normalize(raw, product.unit, variable)
        records.append(CanonicalRecord(
            timestamp=normalize_timestamp(current),
            variable=variable,
            value=value,
            unit=canonical_unit,
            location=location,
            city=city,
            source=product.source,
        ))
        current = current + step
    return CanonicalSeries(tuple(records))
