"""QA item synthesis, structural validation, and dataset serialization."""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from ..core import format_timestamp
from ..errors import GulfClimateError
from .chunking import Chunk
from .facts import AtomicFact

FORMATS = ("mcq", "open", "tf")

OPEN_ANSWER_WORD_BUDGET = 60


class QASynthesisError(GulfClimateError, ValueError):
    pass


@dataclass(frozen=True)
class QAItem:
    """One supervision item with provenance-bearing evidence refs."""

    format: str
    question: str
    answer: str
    options: tuple[str, ...] = ()
    evidence: tuple[str, ...] = ()
    split: str = "text"  # text | visual
    chart_ref: str | None = None
    answer_tolerance: float | None = None
    review_flag: bool = False

    @property
    def item_id(self) -> str:
        payload = f"{self.format}|{self.question}|{self.answer}|{','.join(self.options)}"
        return f"qa:{hashlib.sha256(payload.encode()).hexdigest()[:16]}"


def validate_item(item: QAItem) -> str | None:
    """Return the violated rule, or None when the item is structurally sound."""
    if item.format not in FORMATS:
        return "unknown_format"
    if not item.question.strip():
        return "empty_question"
    if not item.evidence:
        return "no_evidence"
    if item.split not in ("text", "visual"):
        return "unknown_split"
    if item.format == "mcq":
        if len(item.options) < 3:
            return "too_few_options"
        if len(set(item.options)) != len(item.options):
            return "duplicate_options"
        if item.answer not in item.options:
            return "answer_not_in_options"
        if sum(1 for o in item.options if o == item.answer) != 1:
            return "multiple_correct"
    elif item.format == "tf":
        if item.answer not in ("true", "false"):
            return "bad_tf_answer"
    elif item.format == "open":
        if not item.answer.strip():
            return "empty_answer"
        if len(item.answer.split()) > OPEN_ANSWER_WORD_BUDGET:
            return "answer_over_budget"
    return None


def validate_items(items: Iterable[QAItem], counters: Counter | None = None) -> list[QAItem]:
    """Keep structurally valid items, counting each drop reason."""
    kept = []
    for item in items:
        problem = validate_item(item)
        if problem is None:
            kept.append(item)
        elif counters is not None:
            counters[f"dropped_{problem}"] += 1
    return kept


def parse_qa_emission(emission: str, format: str, evidence: Sequence[str],
                      split: str = "text") -> list[QAItem]:
    """Decode a backend emission into candidate items (not yet validated).

    Expected shapes (JSON array):
      mcq:  [{"question", "answer", "options": [...]}]
      open: [{"question", "answer"}]
      tf:   [{"entailed": "...", "contradicted": "..."}]  (one pair per fact batch)
    """
    try:
        payload = json.loads(emission)
    except json.JSONDecodeError as exc:
        raise QASynthesisError(f"backend emission is not valid JSON: {exc.msg}") from exc
    if not isinstance(payload, list):
        raise QASynthesisError("backend emission must be a JSON array")
    evidence = tuple(evidence)
    items: list[QAItem] = []
    for entry in payload:
        if not isinstance(entry, dict):
            continue
        if format == "tf":
            entailed = str(entry.get("entailed", "")).strip()
            contradicted = str(entry.get("contradicted", "")).strip()
            if entailed:
                items.append(QAItem(format="tf", question=entailed, answer="true",
                                    evidence=evidence, split=split))
            if contradicted:
                items.append(QAItem(format="tf", question=contradicted, answer="false",
                                    evidence=evidence, split=split))
        elif format == "mcq":
            items.append(QAItem(
                format="mcq",
                question=str(entry.get("question", "")),
                answer=str(entry.get("answer", "")),
                options=tuple(str(o) for o in entry.get("options", [])),
                evidence=evidence, split=split,
            ))
        else:
            items.append(QAItem(
                format="open",
                question=str(entry.get("question", "")),
                answer=str(entry.get("answer", "")),
                evidence=evidence, split=split,
            ))
    return items


_SYNTHESIS_PROMPT = (
    "Write {format} items grounded ONLY in these statements. {shape_hint} "
    "Reply with a JSON array.\n\nStatements:\n{facts}"
)

_SHAPE_HINTS = {
    "mcq": ('Each item: {"question", "answer", "options"} with at least 3 options, '
            'distractors locally plausible but inconsistent with the statements.'),
    "open": ('Each item: {"question", "answer"} with a concise evidence-anchored answer.'),
    "tf": ('For each statement produce {"entailed": <restatement that is true>, '
           '"contradicted": <minimally altered false variant>}.'),
}


def synthesize_qa(facts: Sequence[AtomicFact], format: str, backend,
                  counters: Counter | None = None) -> list[QAItem]:
    """Condition the backend on facts and return validated items.

    Invalid generations are dropped and counted in ``counters``. For ``tf``,
    each fact contributes a paired entailed (true) and contradicted (false)
    variant.
    """
    if not facts:
        raise QASynthesisError("fact list must be non-empty")
    if format not in FORMATS:
        raise QASynthesisError(f"unknown format {format!r}")
    prompt = _SYNTHESIS_PROMPT.format(
        format=format, shape_hint=_SHAPE_HINTS[format],
        facts="\n".join(f"- {f.statement}" for f in facts),
    )
    emission = backend.complete([{"role": "user", "content": prompt}])
    evidence = tuple(f.fact_id for f in facts)
    items = parse_qa_emission(emission, format, evidence=evidence)
    return validate_items(items, counters=counters)


# -- dataset output ---------------------------------------------------------------


class BrokenEvidenceChain(GulfClimateError, ValueError):
    pass


def resolve_evidence(item: QAItem, facts_by_id: dict[str, AtomicFact],
                     chunks_by_id: dict[str, Chunk]) -> list[dict]:
    """Expand an item's evidence refs into fact/chunk/provenance records.

    Raises :class:`BrokenEvidenceChain` when any link is missing, or when the
    chain ends without a provenance URL or title.
    """
    if not item.evidence:
        raise BrokenEvidenceChain(f"{item.item_id} has no evidence refs")
    resolved = []
    for fact_id in item.evidence:
        fact = facts_by_id.get(fact_id)
        if fact is None:
            raise BrokenEvidenceChain(f"{item.item_id}: unknown fact {fact_id}")
        chunk = chunks_by_id.get(fact.chunk_ref)
        if chunk is None:
            raise BrokenEvidenceChain(f"{item.item_id}: unresolvable chunk {fact.chunk_ref}")
        prov = fact.provenance
        if prov.url is None and prov.title is None:
            raise BrokenEvidenceChain(f"{item.item_id}: provenance lacks url/title")
        resolved.append({
            "fact_id": fact_id,
            "statement": fact.statement,
            "chunk_id": chunk.chunk_id,
            "doc_id": chunk.doc_id,
            "provenance": {
                "url": prov.url,
                "title": prov.title,
                "organization": prov.organization,
                "published": prov.published,
                "query": prov.query,
                "retrieved_at": format_timestamp(prov.retrieved_at),
            },
        })
    return resolved


def item_to_jsonable(item: QAItem, facts_by_id: dict[str, AtomicFact],
                     chunks_by_id: dict[str, Chunk]) -> dict:
    doc = {
        "id": item.item_id,
        "format": item.format,
        "split": item.split,
        "question": item.question,
        "answer": item.answer,
        "evidence": resolve_evidence(item, facts_by_id, chunks_by_id),
        "review_flag": item.review_flag,
    }
    if item.options:
        doc["options"] = list(item.options)
    if item.chart_ref is not None:
        doc["chart_ref"] = item.chart_ref
    if item.answer_tolerance is not None:
        doc["answer_tolerance"] = item.answer_tolerance
    return doc


def write_dataset(items: Sequence[QAItem], facts_by_id: dict[str, AtomicFact],
                  chunks_by_id: dict[str, Chunk], path: str | Path) -> int:
    """Write items as line-delimited JSON with embedded provenance."""
    lines = [json.dumps(item_to_jsonable(i, facts_by_id, chunks_by_id),
                        sort_keys=True, ensure_ascii=False) for i in items]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    return len(lines)
