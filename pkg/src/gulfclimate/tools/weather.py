"""Weather, rainfall, air-quality, and hydrology tool executors.

Each family is served by a climate source: the fixture source replays keyed
rows from the fixture root; the live source queries public open weather and
air-quality HTTP APIs. Payloads are normalized through the canonical unit and
timestamp machinery before leaving an executor.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, datetime, timedelta

import numpy as np

from ..core import (
    CanonicalRecord,
    CanonicalSeries,
    GeoPoint,
    UTC,
    default_table,
    normalize_timestamp,
)
from ..geoforge.gridmatch import nearest_grid_cell
from ..core.geo import GridSpec
from ..toolkit.types import ToolResult
from .analysis import (
    DEFAULT_AQI_EXCEEDANCE,
    DEFAULT_RAIN_EVENT_MM,
    DEFAULT_Z_THRESHOLD,
    analyze_range,
)
from .errors import EmptyRange, HorizonTooLong, NoDataForDate, ProviderFailure
from .providers import FixtureStore, HttpSession, ProviderConfig, nearest_row

# tool name -> (canonical variable, analysis kind)
FORECAST_VARIABLES = {
    "weather_forecast": "temperature",
    "rain_prediction": "precipitation",
    "aqi_prediction": "aqi",
    "uv_index_forecast": "uv_index",
    "pollen_forecast": "pollen",
}
ANALYSIS_KINDS = {
    "weather_analysis": ("temperature", "weather"),
    "rain_analysis": ("precipitation", "rain"),
    "aqi_analysis": ("aqi", "aqi"),
}


@dataclass(frozen=True)
class AnalysisThresholds:
    z: float = DEFAULT_Z_THRESHOLD
    aqi: float = DEFAULT_AQI_EXCEEDANCE
    rain_mm: float = DEFAULT_RAIN_EVENT_MM


def _as_date(d: date | str) -> date:
    return d if isinstance(d, date) else date.fromisoformat(str(d))


def _day_span(d: date) -> tuple[datetime, datetime]:
    start = datetime(d.year, d.month, d.day, tzinfo=UTC)
    return (start, start)


def _normalize(value: float, unit: str, variable: str) -> tuple[float, str]:
    return default_table().normalize(value, unit, variable)


def _daily_series(values: list[float | None], unit: str, variable: str,
                  start: date, location: GeoPoint, city: str | None,
                  source: str) -> CanonicalSeries:
    records = []
    for i, raw in enumerate(values):
        if raw is None:
            value, canonical = None, default_table().canonical_unit(variable)
        else:
            value, canonical = _normalize(float(raw), unit, variable)
        records.append(CanonicalRecord(
            timestamp=normalize_timestamp(start) + timedelta(days=i),
            variable=variable, value=value, unit=canonical,
            location=location, city=city, source=source,
        ))
    return CanonicalSeries(tuple(records))


class FixtureClimateSource:
    """Deterministic file-backed stand-in for the live climate services."""

    def __init__(self, store: FixtureStore):
        self.store = store

    # -- point inquiries ---------------------------------------------------

    def rain_inquiry(self, lat: float, lon: float, when: date) -> ToolResult:
        row = self._point_row("rain_inquiry", lat, lon, when)
        value, unit = _normalize(float(row["value"]), row.get("unit", "mm"), "precipitation")
        return ToolResult(payload=value, units=unit, timestamps=_day_span(when),
                          location=GeoPoint(float(row["lat"]), float(row["lon"])))

    def weather_inquiry(self, lat: float, lon: float, when: date) -> ToolResult:
        row = self._point_row("weather_inquiry", lat, lon, when)
        units = row.get("units", {})
        payload: dict[str, dict[str, float | str]] = {}
        for variable, raw in row["values"].items():
            value, unit = _normalize(float(raw), units.get(variable, ""), variable)
            payload[variable] = {"value": value, "unit": unit}
        return ToolResult(payload=payload, timestamps=_day_span(when),
                          location=GeoPoint(float(row["lat"]), float(row["lon"])))

    def aqi_inquiry(self, lat: float, lon: float, when: date) -> ToolResult:
        row = self._point_row("aqi_inquiry", lat, lon, when)
        unit = row.get("pollutant_unit", "µg/m³")
        pollutants = {
            name: _normalize(float(v), unit, name)[0]
            for name, v in row.get("pollutants", {}).items()
        }
        payload = {
            "aqi": float(row["aqi"]),
            "pollutants": pollutants,
            "pollutant_unit": default_table().canonical_unit("pm25"),
        }
        return ToolResult(payload=payload, units="index", timestamps=_day_span(when),
                          location=GeoPoint(float(row["lat"]), float(row["lon"])))

    def river_discharge(self, lat: float, lon: float, when: date) -> ToolResult:
        doc = self.store.document("river_discharge_check")
        grid_doc = doc.get("grid", {})
        grid = GridSpec(lats=tuple(grid_doc["lats"]), lons=tuple(grid_doc["lons"]),
                        resolution_deg=float(grid_doc.get("resolution_deg", 0.1)))
        mask = np.asarray(grid_doc["river_mask"], dtype=bool)
        i, j = nearest_grid_cell(GeoPoint(lat, lon), grid, valid_mask=mask)
        for row in doc.get("rows", []):
            if (int(row["i"]), int(row["j"])) == (i, j) and str(row["date"]) == when.isoformat():
                value, unit = _normalize(float(row["value"]), row.get("unit", "m³/s"), "discharge")
                return ToolResult(payload=value, units=unit, timestamps=_day_span(when),
                                  location=grid.point(i, j))
        raise NoDataForDate(f"no discharge for cell ({i}, {j}) on {when.isoformat()}")

    def _point_row(self, tool: str, lat: float, lon: float, when: date) -> dict:
        rows = nearest_row(self.store.rows(tool), lat, lon)
        if not rows:
            raise NoDataForDate(f"no {tool} fixture near ({lat}, {lon})")
        for row in rows:
            if str(row["date"]) == when.isoformat():
                return row
        raise NoDataForDate(f"{tool}: no data for {when.isoformat()}")

    # -- forecasts -----------------------------------------------------------

    def forecast(self, tool: str, lat: float, lon: float, horizon: int) -> ToolResult:
        variable = FORECAST_VARIABLES[tool]
        rows = nearest_row(self.store.rows(tool), lat, lon)
        if not rows:
            raise NoDataForDate(f"no {tool} fixture near ({lat}, {lon})")
        row = rows[0]
        values = row["values"]
        if horizon > len(values):
            raise HorizonTooLong(f"horizon {horizon} exceeds provider max {len(values)}")
        series = _daily_series(
            values[:horizon], row.get("unit", ""), variable,
            _as_date(row["start"]), GeoPoint(float(row["lat"]), float(row["lon"])),
            row.get("city"), source=f"fixture:{tool}",
        )
        return ToolResult(payload=series, units=series.unit,
                          timestamps=series.span(), location=series.location)

    # -- range analyses ------------------------------------------------------

    def analysis_series(self, tool: str, lat: float, lon: float,
                        start: date, end: date) -> CanonicalSeries:
        variable, _ = ANALYSIS_KINDS[tool]
        rows = nearest_row(self.store.rows(tool), lat, lon)
        if not rows:
            raise EmptyRange(f"no {tool} fixture near ({lat}, {lon})")
        row = rows[0]
        records = []
        for item in row["records"]:
            d = _as_date(item["date"])
            if not (start <= d <= end):
                continue
            raw = item.get("value")
            if raw is None:
                value, unit = None, default_table().canonical_unit(variable)
            else:
                value, unit = _normalize(float(raw), row.get("unit", ""), variable)
            records.append(CanonicalRecord(
                timestamp=normalize_timestamp(d), variable=variable, value=value,
                unit=unit, location=GeoPoint(float(row["lat"]), float(row["lon"])),
                city=row.get("city"), source=f"fixture:{tool}",
            ))
        return CanonicalSeries(tuple(records))


class LiveClimateSource:
    """Public HTTP climate services (archive, forecast, air quality, flood)."""

    WEATHER_ARCHIVE = "https://archive-api.open-meteo.com/v1/archive"
    WEATHER_FORECAST = "https://api.open-meteo.com/v1/forecast"
    AIR_QUALITY = "https://air-quality-api.open-meteo.com/v1/air-quality"
    FLOOD = "https://flood-api.open-meteo.com/v1/flood"

    def __init__(self, config: ProviderConfig):
        self.http = HttpSession(config)

    def rain_inquiry(self, lat: float, lon: float, when: date) -> ToolResult:  # pragma: no cover - network
        data = self.http.get_json(self.WEATHER_ARCHIVE, {
            "latitude": lat, "longitude": lon, "start_date": when.isoformat(),
            "end_date": when.isoformat(), "daily": "precipitation_sum",
            "timezone": "UTC",
        })
        values = data.get("daily", {}).get("precipitation_sum") or []
        if not values or values[0] is None:
            raise NoDataForDate(f"no precipitation for {when.isoformat()}")
        value, unit = _normalize(float(values[0]), "mm", "precipitation")
        return ToolResult(payload=value, units=unit, timestamps=_day_span(when),
                          location=GeoPoint(lat, lon))

    def weather_inquiry(self, lat: float, lon: float, when: date) -> ToolResult:  # pragma: no cover - network
        data = self.http.get_json(self.WEATHER_ARCHIVE, {
            "latitude": lat, "longitude": lon, "start_date": when.isoformat(),
            "end_date": when.isoformat(),
            "daily": "temperature_2m_mean,windspeed_10m_max,relative_humidity_2m_mean",
            "timezone": "UTC",
        })
        daily = data.get("daily", {})
        mapping = {"temperature": ("temperature_2m_mean", "°C"),
                   "wind_speed": ("windspeed_10m_max", "km/h"),
                   "humidity": ("relative_humidity_2m_mean", "%")}
        payload = {}
        for variable, (key, unit) in mapping.items():
            values = daily.get(key) or []
            if values and values[0] is not None:
                v, u = _normalize(float(values[0]), unit, variable)
                payload[variable] = {"value": v, "unit": u}
        if not payload:
            raise NoDataForDate(f"no weather for {when.isoformat()}")
        return ToolResult(payload=payload, timestamps=_day_span(when),
                          location=GeoPoint(lat, lon))

    def aqi_inquiry(self, lat: float, lon: float, when: date) -> ToolResult:  # pragma: no cover - network
        data = self.http.get_json(self.AIR_QUALITY, {
            "latitude": lat, "longitude": lon, "start_date": when.isoformat(),
            "end_date": when.isoformat(),
            "hourly": "european_aqi,pm2_5,pm10,nitrogen_dioxide,ozone",
            "timezone": "UTC",
        })
        hourly = data.get("hourly", {})
        aqi_values = [v for v in (hourly.get("european_aqi") or []) if v is not None]
        if not aqi_values:
            raise NoDataForDate(f"no AQI for {when.isoformat()}")
        names = {"pm2_5": "pm25", "pm10": "pm10", "nitrogen_dioxide": "no2", "ozone": "o3"}
        pollutants = {}
        for key, variable in names.items():
            vals = [v for v in (hourly.get(key) or []) if v is not None]
            if vals:
                pollutants[variable] = _normalize(float(np.mean(vals)), "µg/m³", variable)[0]
        payload = {"aqi": float(max(aqi_values)), "pollutants": pollutants,
                   "pollutant_unit": "µg/m³"}
        return ToolResult(payload=payload, units="index", timestamps=_day_span(when),
                          location=GeoPoint(lat, lon))

    def river_discharge(self, lat: float, lon: float, when: date) -> ToolResult:  # pragma: no cover - network
        data = self.http.get_json(self.FLOOD, {
            "latitude": lat, "longitude": lon, "daily": "river_discharge",
            "start_date": when.isoformat(), "end_date": when.isoformat(),
        })
        values = data.get("daily", {}).get("river_discharge") or []
        if not values or values[0] is None:
            raise NoDataForDate(f"no discharge for {when.isoformat()}")
        value, unit = _normalize(float(values[0]), "m3/s", "discharge")
        return ToolResult(payload=value, units=unit, timestamps=_day_span(when),
                          location=GeoPoint(lat, lon))

    def forecast(self, tool: str, lat: float, lon: float, horizon: int) -> ToolResult:  # pragma: no cover - network
        variable = FORECAST_VARIABLES[tool]
        daily_keys = {"weather_forecast": ("temperature_2m_mean", "°C", self.WEATHER_FORECAST),
                      "rain_prediction": ("precipitation_sum", "mm", self.WEATHER_FORECAST),
                      "aqi_prediction": ("european_aqi", "index", self.AIR_QUALITY),
                      "uv_index_forecast": ("uv_index_max", "index", self.WEATHER_FORECAST),
                      "pollen_forecast": ("grass_pollen", "index", self.AIR_QUALITY)}
        key, unit, endpoint = daily_keys[tool]
        params = {"latitude": lat, "longitude": lon, "forecast_days": horizon + 1,
                  "timezone": "UTC"}
        if endpoint == self.AIR_QUALITY:
            params["hourly"] = key
        else:
            params["daily"] = key
        data = self.http.get_json(endpoint, params)
        block = data.get("daily") or data.get("hourly") or {}
        values = (block.get(key) or [])[:horizon]
        if len(values) < horizon:
            raise HorizonTooLong(f"provider returned {len(values)} of {horizon} points")
        start = date.today() + timedelta(days=1)
        series = _daily_series(values, unit, variable, start, GeoPoint(lat, lon),
                               None, source=f"live:{tool}")
        return ToolResult(payload=series, units=series.unit,
                          timestamps=series.span(), location=series.location)

    def analysis_series(self, tool: str, lat: float, lon: float,
                        start: date, end: date) -> CanonicalSeries:  # pragma: no cover - network
        variable, _ = ANALYSIS_KINDS[tool]
        key, unit, endpoint = {
            "weather_analysis": ("temperature_2m_mean", "°C", self.WEATHER_ARCHIVE),
            "rain_analysis": ("precipitation_sum", "mm", self.WEATHER_ARCHIVE),
            "aqi_analysis": ("european_aqi", "index", self.AIR_QUALITY),
        }[tool]
        params = {"latitude": lat, "longitude": lon, "start_date": start.isoformat(),
                  "end_date": end.isoformat(), "timezone": "UTC"}
        params["hourly" if endpoint == self.AIR_QUALITY else "daily"] = key
        data = self.http.get_json(endpoint, params)
        block = data.get("daily") or data.get("hourly") or {}
        values = block.get(key) or []
        return _daily_series(values, unit, variable, start, GeoPoint(lat, lon),
                             None, source=f"live:{tool}")


def make_point_executor(source, tool: str):
    """Executor for the point-inquiry family."""
    def run(lat: float, lon: float, date: date) -> ToolResult:
        if tool == "rain_inquiry":
            return source.rain_inquiry(lat, lon, _as_date(date))
        if tool == "weather_inquiry":
            return source.weather_inquiry(lat, lon, _as_date(date))
        if tool == "aqi_inquiry":
            return source.aqi_inquiry(lat, lon, _as_date(date))
        if tool == "river_discharge_check":
            return source.river_discharge(lat, lon, _as_date(date))
        raise ProviderFailure(f"unknown point tool {tool}")
    return run


def make_forecast_executor(source, tool: str, default_horizon: int = 3):
    """Executor for the forecast family; horizon defaults per tool config."""
    if tool in ("weather_forecast",):
        def run(lat: float, lon: float, days: int) -> ToolResult:
            return source.forecast(tool, lat, lon, days)
        return run

    if tool in ("rain_prediction", "aqi_prediction"):
        def run(lat: float, lon: float, horizon: int) -> ToolResult:
            return source.forecast(tool, lat, lon, horizon)
        return run

    def run(lat: float, lon: float, horizon: int | None = None) -> ToolResult:
        return source.forecast(tool, lat, lon, horizon or default_horizon)
    return run


def make_analysis_executor(source, tool: str, thresholds: AnalysisThresholds):
    """Executor for the range-analysis family."""
    _, kind = ANALYSIS_KINDS[tool]

    def run(lat: float, lon: float, start: date, end: date) -> ToolResult:
        start_d, end_d = _as_date(start), _as_date(end)
        if not start_d < end_d:
            raise EmptyRange(f"start {start_d} must precede end {end_d}")
        series = source.analysis_series(tool, lat, lon, start_d, end_d)
        report = analyze_range(series, kind, z_threshold=thresholds.z,
                               aqi_exceedance=thresholds.aqi,
                               rain_event_mm=thresholds.rain_mm)
        return ToolResult(payload=report, units=report.unit or None,
                          timestamps=(report.start, report.end),
                          location=series.location)
    return run
