"""LLM backend bindings: a remote chat endpoint or a deterministic script."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Mapping, Protocol, Sequence

import requests

from ..errors import ConfigError, GulfClimateError

Message = Mapping[str, str]


class BackendFailure(GulfClimateError):
    """The backend could not produce an emission."""


class LLMBackend(Protocol):
    def complete(self, messages: Sequence[Message]) -> str:
        """Produce the next emission given the conversation so far."""
        ...


class ScriptedBackend:
    """Replays a fixed emission sequence; deterministic by construction.

    The replay file format is a JSON object with an ``emissions`` array; each
    ``complete`` call returns the next entry regardless of the incoming
    conversation, so a replay is only meaningful against the run it was
    written for.
    """

    def __init__(self, emissions: Sequence[str]):
        self._emissions = tuple(str(e) for e in emissions)
        self._cursor = 0

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedBackend":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read replay file {path}: {exc}") from exc
        emissions = doc.get("emissions")
        if not isinstance(emissions, list):
            raise ConfigError(f"replay file {path} has no 'emissions' array")
        return cls(emissions)

    @property
    def remaining(self) -> int:
        return len(self._emissions) - self._cursor

    def complete(self, messages: Sequence[Message]) -> str:
        if self._cursor >= len(self._emissions):
            raise BackendFailure("scripted replay exhausted")
        emission = self._emissions[self._cursor]
        self._cursor += 1
        return emission


class RemoteChatBackend:
    """A chat-completion HTTP endpoint (OpenAI-style request/response shape)."""

    def __init__(self, endpoint: str, model: str, api_key_env: str = "",
                 temperature: float = 0.0, timeout_s: float = 60.0):
        self.endpoint = endpoint
        self.model = model
        self.api_key_env = api_key_env
        self.temperature = temperature
        self.timeout_s = timeout_s

    def complete(self, messages: Sequence[Message]) -> str:  # pragma: no cover - network
        headers = {"Content-Type": "application/json"}
        if self.api_key_env:
            key = os.environ.get(self.api_key_env)
            if not key:
                raise BackendFailure(f"environment variable {self.api_key_env} is not set")
            headers["Authorization"] = f"Bearer {key}"
        body = {
            "model": self.model,
            "temperature": self.temperature,
            "messages": [dict(m) for m in messages],
        }
        try:
            resp = requests.post(self.endpoint, json=body, headers=headers,
                                 timeout=self.timeout_s)
            resp.raise_for_status()
            data = resp.json()
            return data["choices"][0]["message"]["content"]
        except requests.RequestException as exc:
            raise BackendFailure(f"backend request failed: {exc}") from exc
        except (KeyError, IndexError, TypeError) as exc:
            raise BackendFailure(f"malformed backend response: {exc}") from exc
