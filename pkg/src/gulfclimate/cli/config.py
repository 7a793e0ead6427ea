"""Run configuration: one JSON file plus flag overrides."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..agent.backend import LLMBackend, RemoteChatBackend, ScriptedBackend
from ..errors import ConfigError
from ..tools import ProviderConfig, ToolSettings


@dataclass(frozen=True)
class BackendConfig:
    kind: str = "scripted"  # scripted | remote
    replay: Path | None = None
    endpoint: str | None = None
    model: str | None = None
    api_key_env: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ("scripted", "remote"):
            raise ConfigError(f"unknown backend kind {self.kind!r}")
        if self.kind == "scripted" and self.replay is None:
            raise ConfigError("scripted backend requires a replay file")
        if self.kind == "remote" and not (self.endpoint and self.model):
            raise ConfigError("remote backend requires endpoint and model")

    def build(self) -> LLMBackend:
        if self.kind == "scripted":
            if not Path(self.replay).is_file():
                raise ConfigError(f"replay file not found: {self.replay}")
            return ScriptedBackend.from_file(self.replay)
        return RemoteChatBackend(endpoint=self.endpoint, model=self.model,
                                 api_key_env=self.api_key_env)


@dataclass(frozen=True)
class RunConfig:
    provider: ProviderConfig
    backend: BackendConfig | None
    output_dir: Path = Path("out")
    seed: int = 0
    budget: int = 8
    route_intent: bool = True
    settings: ToolSettings = field(default_factory=ToolSettings)
    raw: dict = field(default_factory=dict)

    def config_hash(self) -> str:
        canonical = json.dumps(self.raw, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def load_config(path: str | Path, overrides: dict | None = None) -> RunConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if overrides:
        doc = {**doc, **{k: v for k, v in overrides.items() if v is not None}}
    base = path.parent

    provider_doc = doc.get("provider", {})
    fixture_root = provider_doc.get("fixture_root")
    if fixture_root is not None and not Path(fixture_root).is_absolute():
        fixture_root = (base / fixture_root).resolve()
    provider = ProviderConfig(
        kind=provider_doc.get("mode", provider_doc.get("kind", "fixture")),
        fixture_root=Path(fixture_root) if fixture_root else None,
        endpoint=provider_doc.get("endpoint",
                                  "https://api.open-meteo.com"
                                  if provider_doc.get("mode") == "live_http" else None),
        api_key_env=provider_doc.get("api_key_env"),
        timeout_s=float(provider_doc.get("timeout_s", 30.0)),
    )

    backend = None
    if "backend" in doc:
        backend_doc = doc["backend"]
        replay = backend_doc.get("replay")
        if replay is not None and not Path(replay).is_absolute():
            replay = (base / replay).resolve()
        backend = BackendConfig(
            kind=backend_doc.get("kind", "scripted"),
            replay=Path(replay) if replay else None,
            endpoint=backend_doc.get("endpoint"),
            model=backend_doc.get("model"),
            api_key_env=backend_doc.get("api_key_env", ""),
        )

    output_dir = Path(doc.get("output_dir", "out"))
    if not output_dir.is_absolute():
        output_dir = (base / output_dir).resolve()

    settings_doc = doc.get("tool_settings", {})
    settings = ToolSettings(**settings_doc) if settings_doc else ToolSettings()

    return RunConfig(
        provider=provider,
        backend=backend,
        output_dir=output_dir,
        seed=int(doc.get("seed", 0)),
        budget=int(doc.get("budget", 8)),
        route_intent=bool(doc.get("route_intent", True)),
        settings=settings,
        raw=doc,
    )
