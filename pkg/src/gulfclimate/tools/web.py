"""Web retrieval and summarization executors."""

from __future__ import annotations

import hashlib
import re

from ..toolkit.types import ToolResult
from .errors import ProviderFailure, ProviderNotAvailable
from .providers import FixtureStore


def query_key(query: str) -> str:
    """Stable lookup key for a search query (used by the replay fixture)."""
    normalized = re.sub(r"\s+", " ", query.strip().casefold())
    return hashlib.sha256(normalized.encode("utf-8")).hexdigest()[:16]


class FixtureSearch:
    """Replays recorded result sets keyed by query hash."""

    def __init__(self, store: FixtureStore):
        self.store = store

    def search(self, query: str) -> list[dict]:
        doc = self.store.document("online_search")
        queries = doc.get("queries", {})
        entry = queries.get(query_key(query))
        if entry is None:
            for candidate in queries.values():
                if candidate.get("query") == query:
                    entry = candidate
                    break
        if entry is None:
            raise ProviderFailure(f"no recorded results for query {query!r}")
        return list(entry["results"])

    def page(self, url: str) -> bytes:
        pages = self.store.document("online_search").get("pages", {})
        entry = pages.get(url)
        if entry is None:
            raise ProviderFailure(f"no recorded page for {url!r}")
        return entry["text"].encode("utf-8")

    def retrieved_at(self, query: str) -> str | None:
        entry = self.store.document("online_search").get("queries", {}).get(query_key(query))
        return entry.get("retrieved_at") if entry else None


def make_search_executor(search, top_k: int = 5):
    def run(query: str) -> ToolResult:
        if not query.strip():
            raise ProviderFailure("empty query")
        results = search.search(query)[:top_k]
        return ToolResult(payload=[
            {"title": r["title"], "url": r["url"], "snippet": r.get("snippet", "")}
            for r in results
        ])
    return run


_SENTENCE_END = re.compile(r"(?<=[.!?])\s+")


def extractive_summary(text: str, word_budget: int) -> str:
    """Leading whole sentences within the word budget (backend-free fallback)."""
    sentences = _SENTENCE_END.split(text.strip())
    out: list[str] = []
    used = 0
    for sentence in sentences:
        words = sentence.split()
        if not words:
            continue
        if out and used + len(words) > word_budget:
            break
        out.append(sentence.strip())
        used += len(words)
        if used >= word_budget:
            break
    return " ".join(out)


def make_summarize_executor(backend=None, word_budget: int = 60):
    """Summarize via the bound LLM backend, or extractively when none is bound."""
    def run(text: str) -> ToolResult:
        if not text.strip():
            raise ProviderFailure("empty input text")
        if backend is None:
            return ToolResult(payload=extractive_summary(text, word_budget))
        prompt = (f"Summarize the following in at most {word_budget} words, "
                  f"preserving key facts:\n\n{text}")
        summary = backend.complete([{"role": "user", "content": prompt}])
        return ToolResult(payload=summary.strip())
    return run


class LiveSearchNotConfigured:
    """Placeholder for a live search binding; no keyless public API is wired."""

    def search(self, query: str) -> list[dict]:  # pragma: no cover - config error path
        raise ProviderNotAvailable(
            "live online_search requires a provider integration; use fixture mode"
        )
