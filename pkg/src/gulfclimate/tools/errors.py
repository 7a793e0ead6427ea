"""Executor errors; each carries the status code for its error observation."""

from __future__ import annotations

from ..toolkit.registry import ToolExecutionError


class ProviderFailure(ToolExecutionError):
    code = "provider_failure"


class ProviderNotAvailable(ToolExecutionError):
    code = "provider_not_available"


class NoDataForDate(ToolExecutionError):
    code = "no_data_for_date"


class HorizonTooLong(ToolExecutionError):
    code = "horizon_too_long"


class NoImagery(ToolExecutionError):
    code = "no_imagery"


class MissingBand(ToolExecutionError):
    code = "missing_band"


class ShapeMismatch(ToolExecutionError):
    code = "shape_mismatch"


class UnknownFactorKey(ToolExecutionError):
    code = "unknown_factor_key"


class UnresolvableReference(ToolExecutionError):
    code = "unresolvable_reference"


class EmptyRange(ToolExecutionError):
    code = "empty_range"


class RegionNotFound(ToolExecutionError):
    code = "unknown_region"
