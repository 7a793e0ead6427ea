"""Command-line operator surface."""

from .config import BackendConfig, RunConfig, load_config
from .main import main

__all__ = ["BackendConfig", "RunConfig", "load_config", "main"]
