"""Provider abstraction: deterministic fixture files or live HTTP services.

Fixture layout: one JSON document per tool under the fixture root, named
``<tool>.json``, each holding keyed rows (see ``docs/fixture-formats.md``).
Fixture providers are pure reads and fully deterministic.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import requests

from ..errors import ConfigError
from .errors import ProviderFailure

PROVIDER_KINDS = ("fixture", "live_http")


@dataclass(frozen=True)
class ProviderConfig:
    kind: str = "fixture"
    fixture_root: Path | None = None
    endpoint: str | None = None
    api_key_env: str | None = None
    timeout_s: float = 30.0

    def __post_init__(self) -> None:
        if self.kind not in PROVIDER_KINDS:
            raise ConfigError(f"unknown provider kind {self.kind!r}")
        if self.kind == "fixture" and self.fixture_root is None:
            raise ConfigError("fixture provider requires fixture_root")
        if self.kind == "live_http" and not self.endpoint:
            raise ConfigError("live provider requires an endpoint")

    @property
    def api_key(self) -> str | None:
        if self.api_key_env:
            return os.environ.get(self.api_key_env)
        return None


class FixtureStore:
    """Lazy, cached access to per-tool fixture documents."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        if not self.root.is_dir():
            raise ConfigError(f"fixture root {self.root} is not a directory")
        self._cache: dict[str, Any] = {}

    def document(self, name: str) -> Any:
        if name not in self._cache:
            path = self.root / f"{name}.json"
            if not path.is_file():
                raise ProviderFailure(f"no fixture file for {name!r} under {self.root}")
            try:
                self._cache[name] = json.loads(path.read_text(encoding="utf-8"))
            except json.JSONDecodeError as exc:
                raise ProviderFailure(f"fixture {path} is not valid JSON: {exc}") from exc
        return self._cache[name]

    def rows(self, name: str) -> list[dict]:
        doc = self.document(name)
        rows = doc.get("rows") if isinstance(doc, dict) else None
        if not isinstance(rows, list):
            raise ProviderFailure(f"fixture {name!r} has no 'rows' array")
        return rows


class HttpSession:
    """Thin wrapper so live providers share timeout and error mapping."""

    def __init__(self, config: ProviderConfig):
        self.config = config
        self._session = requests.Session()

    def get_json(self, url: str, params: dict | None = None) -> Any:
        try:
            resp = self._session.get(url, params=params, timeout=self.config.timeout_s)
            resp.raise_for_status()
            return resp.json()
        except requests.Timeout as exc:
            raise TimeoutError(str(exc)) from exc
        except requests.RequestException as exc:
            raise ProviderFailure(str(exc)) from exc


def nearest_row(rows: list[dict], lat: float, lon: float,
                max_deg: float = 0.25) -> list[dict]:
    """Fixture rows whose planted coordinates sit nearest to the query point.

    Returns every row sharing the winning location (callers then filter by
    date or other keys); empty when nothing lies within ``max_deg``.
    """
    best: tuple[float, float] | None = None
    best_d = max_deg
    for row in rows:
        d = max(abs(float(row["lat"]) - lat), abs(float(row["lon"]) - lon))
        if d <= best_d:
            best_d = d
            best = (float(row["lat"]), float(row["lon"]))
    if best is None:
        return []
    return [r for r in rows if (float(r["lat"]), float(r["lon"])) == best]
