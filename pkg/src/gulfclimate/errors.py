"""Shared exception hierarchy."""

from __future__ import annotations


class GulfClimateError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(GulfClimateError):
    """Invalid or incomplete configuration."""
