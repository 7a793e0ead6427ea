"""The full tool suite: signatures, default bindings, manifest loading."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConfigError
from ..geoforge.inventory import CityInventory, UnknownRegion
from ..toolkit.registry import Binding, ToolRegistry
from ..toolkit.types import ParamSpec, ToolResult, ToolSignature
from .analysis import DEFAULT_AQI_EXCEEDANCE, DEFAULT_RAIN_EVENT_MM, DEFAULT_Z_THRESHOLD
from .biodiversity import make_detect_bird, make_detect_species
from .carbon import EmissionFactorTable, carbon_footprint
from .errors import ProviderNotAvailable, RegionNotFound
from .providers import FixtureStore, ProviderConfig
from .raster import DEFAULT_DEGRADATION_DELTA
from .satellite import make_change_executor, make_satellite_executor, ndvi_executor, ndwi_executor
from .weather import (
    AnalysisThresholds,
    FixtureClimateSource,
    LiveClimateSource,
    make_analysis_executor,
    make_forecast_executor,
    make_point_executor,
)
from .web import FixtureSearch, LiveSearchNotConfigured, make_search_executor, make_summarize_executor


def _p(name: str, type_: str, required: bool = True, **kw) -> ParamSpec:
    return ParamSpec(name=name, type=type_, required=required, **kw)


_LAT = _p("lat", "real", minimum=-90, maximum=90)
_LON = _p("lon", "real", minimum=-180, maximum=180)

SIGNATURES: tuple[ToolSignature, ...] = (
    # Remote sensing and land surface
    ToolSignature("get_satellite_image", "remote_sensing",
                  (_LAT, _LON, _p("date", "date")), "image_ref",
                  "Retrieve a multispectral satellite image for a coordinate and date."),
    ToolSignature("calculate_ndvi", "remote_sensing",
                  (_p("image", "image_ref"),), "index_map",
                  "Compute the vegetation index map and summary stats from an image."),
    ToolSignature("calculate_ndwi", "remote_sensing",
                  (_p("image", "image_ref"),), "index_map",
                  "Compute the water/moisture index map and summary stats from an image."),
    ToolSignature("desertification_analysis", "remote_sensing",
                  (_p("image1", "image_ref"), _p("image2", "image_ref")), "change_report",
                  "Compare two images and report land-degradation indicators."),
    # Biodiversity and species
    ToolSignature("detect_bird", "biodiversity",
                  (_p("audio_clip", "audio_ref"),), "list",
                  "Recognize bird calls from audio, returning candidates with confidence."),
    ToolSignature("detect_species", "biodiversity",
                  (_p("image", "image_ref"),), "list",
                  "Classify plant or animal species from an image."),
    # Web retrieval and summarization
    ToolSignature("online_search", "web",
                  (_p("query", "string"),), "list",
                  "Targeted search for policies, reports, and event coverage."),
    ToolSignature("summarize", "web",
                  (_p("text", "string"),), "string",
                  "Produce a concise summary preserving key facts."),
    # Carbon and sustainability
    ToolSignature("carbon_footprint_calculation", "carbon",
                  (_p("country", "string"), _p("industry", "string"),
                   _p("year", "integer"), _p("revenue", "real", minimum=0)), "real",
                  "Estimate annual emissions for a country/industry/year given revenue."),
    # Air quality and health indices
    ToolSignature("aqi_inquiry", "air_quality",
                  (_LAT, _LON, _p("date", "date")), "mapping",
                  "Return AQI and pollutant values for a location and date."),
    ToolSignature("aqi_prediction", "air_quality",
                  (_LAT, _LON, _p("horizon", "integer", minimum=1)), "series_ref",
                  "Forecast AQI for a location over a horizon in days."),
    ToolSignature("aqi_analysis", "air_quality",
                  (_LAT, _LON, _p("start", "date"), _p("end", "date")), "analysis_report",
                  "Summarize AQI trends and exceedances over a date range."),
    ToolSignature("pollen_forecast", "air_quality",
                  (_LAT, _LON, _p("horizon", "integer", required=False, minimum=1)), "series_ref",
                  "Return forecast pollen levels for a location."),
    ToolSignature("uv_index_forecast", "air_quality",
                  (_LAT, _LON, _p("horizon", "integer", required=False, minimum=1)), "series_ref",
                  "Return the UV index forecast for a location."),
    # Weather, rainfall, and hydrology
    ToolSignature("weather_inquiry", "weather_hydrology",
                  (_LAT, _LON, _p("date", "date")), "mapping",
                  "Return historical weather variables for a location and date."),
    ToolSignature("weather_forecast", "weather_hydrology",
                  (_LAT, _LON, _p("days", "integer", minimum=1)), "series_ref",
                  "Return the weather forecast for the next n days."),
    ToolSignature("weather_analysis", "weather_hydrology",
                  (_LAT, _LON, _p("start", "date"), _p("end", "date")), "analysis_report",
                  "Compute summary statistics and anomalies over a date range."),
    ToolSignature("rain_inquiry", "weather_hydrology",
                  (_LAT, _LON, _p("date", "date")), "real",
                  "Return precipitation in millimetres for a location and date."),
    ToolSignature("rain_prediction", "weather_hydrology",
                  (_LAT, _LON, _p("horizon", "integer", minimum=1)), "series_ref",
                  "Forecast precipitation for a location over a horizon in days."),
    ToolSignature("rain_analysis", "weather_hydrology",
                  (_LAT, _LON, _p("start", "date"), _p("end", "date")), "analysis_report",
                  "Summarize rainfall patterns and extremes over a date range."),
    ToolSignature("river_discharge_check", "weather_hydrology",
                  (_LAT, _LON, _p("date", "date")), "real",
                  "Return simulated river discharge for the nearest river grid cell."),
    # Geospatial utility
    ToolSignature("geocode_mapping", "geospatial",
                  (_p("region", "string"),), "geopoint",
                  "Resolve a region or city name to coordinates."),
)

POINT_TOOLS = ("weather_inquiry", "rain_inquiry", "aqi_inquiry", "river_discharge_check")
FORECAST_TOOLS = ("weather_forecast", "rain_prediction", "aqi_prediction",
                  "uv_index_forecast", "pollen_forecast")
ANALYSIS_TOOLS = ("weather_analysis", "rain_analysis", "aqi_analysis")


@dataclass(frozen=True)
class ToolSettings:
    """Configuration defaults documented as non-interface choices."""

    z_threshold: float = DEFAULT_Z_THRESHOLD
    aqi_exceedance: float = DEFAULT_AQI_EXCEEDANCE
    rain_event_mm: float = DEFAULT_RAIN_EVENT_MM
    degradation_delta: float = DEFAULT_DEGRADATION_DELTA
    forecast_default_horizon: int = 3
    search_top_k: int = 5
    summary_word_budget: int = 60
    timeout_s: float = 30.0


def make_geocode_executor(inventory: CityInventory):
    def run(region: str) -> ToolResult:
        try:
            entry = inventory.lookup(region)
        except UnknownRegion as exc:
            raise RegionNotFound(str(exc)) from exc
        return ToolResult(payload=entry.location, location=entry.location)
    return run


def make_carbon_executor(table: EmissionFactorTable):
    def run(country: str, industry: str, year: int, revenue: float) -> ToolResult:
        return ToolResult(payload=carbon_footprint(table, country, industry, year, revenue))
    return run


def _unavailable(tool: str):
    def run(**kwargs) -> ToolResult:
        raise ProviderNotAvailable(f"{tool} has no live provider; use fixture mode")
    return run


def build_registry(provider: ProviderConfig, settings: ToolSettings = ToolSettings(),
                   inventory: CityInventory | None = None,
                   factor_table: EmissionFactorTable | None = None,
                   backend=None,
                   enabled: tuple[str, ...] | None = None) -> ToolRegistry:
    """Bind every enabled tool to its provider-backed executor.

    ``backend`` is the optional LLM backend used by ``summarize``;
    ``enabled`` restricts the suite (defaults to all 22 tools).
    """
    inventory = inventory or CityInventory.default()
    thresholds = AnalysisThresholds(z=settings.z_threshold, aqi=settings.aqi_exceedance,
                                    rain_mm=settings.rain_event_mm)
    if provider.kind == "fixture":
        store = FixtureStore(provider.fixture_root)
        climate = FixtureClimateSource(store)
        search = FixtureSearch(store)
        if factor_table is None:
            factors_path = Path(provider.fixture_root) / "carbon_factors.csv"
            if factors_path.is_file():
                factor_table = EmissionFactorTable.from_file(factors_path)
        sat_executor = make_satellite_executor(store)
        bird_executor = make_detect_bird(store)
        species_executor = make_detect_species(store)
    else:
        climate = LiveClimateSource(provider)
        search = LiveSearchNotConfigured()
        sat_executor = _unavailable("get_satellite_image")
        bird_executor = _unavailable("detect_bird")
        species_executor = _unavailable("detect_species")

    executors = {
        "get_satellite_image": sat_executor,
        "calculate_ndvi": ndvi_executor,
        "calculate_ndwi": ndwi_executor,
        "desertification_analysis": make_change_executor(settings.degradation_delta),
        "detect_bird": bird_executor,
        "detect_species": species_executor,
        "online_search": make_search_executor(search, top_k=settings.search_top_k),
        "summarize": make_summarize_executor(backend, word_budget=settings.summary_word_budget),
        "carbon_footprint_calculation": (
            make_carbon_executor(factor_table) if factor_table is not None
            else _unavailable("carbon_footprint_calculation")
        ),
        "geocode_mapping": make_geocode_executor(inventory),
    }
    for tool in POINT_TOOLS:
        executors[tool] = make_point_executor(climate, tool)
    for tool in FORECAST_TOOLS:
        executors[tool] = make_forecast_executor(climate, tool,
                                                 settings.forecast_default_horizon)
    for tool in ANALYSIS_TOOLS:
        executors[tool] = make_analysis_executor(climate, tool, thresholds)

    wanted = set(enabled) if enabled is not None else {s.name for s in SIGNATURES}
    unknown = wanted - {s.name for s in SIGNATURES}
    if unknown:
        raise ConfigError(f"manifest enables unknown tools: {sorted(unknown)}")
    entries = {
        sig: Binding(executor=executors[sig.name], timeout_s=settings.timeout_s)
        for sig in SIGNATURES if sig.name in wanted
    }
    return ToolRegistry(entries)


@dataclass(frozen=True)
class Manifest:
    """Parsed tool manifest: which tools are enabled and how they bind."""

    provider: ProviderConfig
    enabled: tuple[str, ...] | None = None
    settings: ToolSettings = field(default_factory=ToolSettings)
    factor_table_path: Path | None = None
    inventory_path: Path | None = None


def load_manifest(path: str | Path) -> Manifest:
    """Read a tool manifest config file (see ``docs/fixture-formats.md``)."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read manifest {path}: {exc}") from exc
    provider_doc = doc.get("provider", {})
    kind = provider_doc.get("kind", "fixture")
    fixture_root = provider_doc.get("fixture_root")
    if fixture_root is not None:
        fixture_root = (path.parent / fixture_root).resolve() \
            if not Path(fixture_root).is_absolute() else Path(fixture_root)
    provider = ProviderConfig(
        kind=kind,
        fixture_root=fixture_root,
        endpoint=provider_doc.get("endpoint", "https://api.open-meteo.com" if kind == "live_http" else None),
        api_key_env=provider_doc.get("api_key_env"),
        timeout_s=float(provider_doc.get("timeout_s", 30.0)),
    )
    enabled = doc.get("tools")
    if enabled is not None and enabled != "all":
        enabled = tuple(enabled)
    else:
        enabled = None
    settings_doc = doc.get("settings", {})
    settings = ToolSettings(**settings_doc) if settings_doc else ToolSettings()
    return Manifest(provider=provider, enabled=enabled, settings=settings)


def registry_from_manifest(manifest: Manifest, backend=None) -> ToolRegistry:
    inventory = (CityInventory.from_file(manifest.inventory_path)
                 if manifest.inventory_path else None)
    factor_table = (EmissionFactorTable.from_file(manifest.factor_table_path)
                    if manifest.factor_table_path else None)
    return build_registry(manifest.provider, settings=manifest.settings,
                          inventory=inventory, factor_table=factor_table,
                          backend=backend, enabled=manifest.enabled)
