"""Visual-temporal QA over chart windows.

Anomaly and imputation items are generated deterministically from the chart
data (no backend): a seeded spike injection or span mask produces a perturbed
chart whose gold answer is known by construction. Forecasting and reasoning
items come from the backend conditioned on chart metadata and pass the same
structural validation as textual QA.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..core import CanonicalRecord, CanonicalSeries, format_timestamp
from ..core.csvio import series_from_csv
from ..errors import GulfClimateError
from ..textforge.chunking import Chunk
from ..textforge.facts import AtomicFact
from ..textforge.qa import QAItem, parse_qa_emission, validate_items
from .charts import ChartArtifact, chart_for_series, metadata_to_jsonable

CATEGORIES = ("anomaly", "forecasting", "imputation", "reasoning")

DEFAULT_SPIKE_SIGMA = 5.0
DEFAULT_MASK_FRACTION = 0.1


class VisualQAError(GulfClimateError, ValueError):
    pass


@dataclass(frozen=True)
class SpikeInjection:
    index: int  # position within the present records
    timestamp: str  # ISO day
    direction: str  # "upward" | "downward"
    magnitude: float


@dataclass(frozen=True)
class SpanMask:
    start: str
    end: str  # inclusive ISO days
    true_mean: float
    tolerance: float


def inject_spike(series: CanonicalSeries, seed: int,
                 k_sigma: float = DEFAULT_SPIKE_SIGMA) -> tuple[CanonicalSeries, SpikeInjection]:
    """Copy the series with one synthetic spike of ``k_sigma`` magnitude.

    The injection point and direction are drawn from a seeded RNG over the
    interior points; a zero-variance series falls back to a unit magnitude so
    the spike is still visible.
    """
    present = [r for r in series.records if not r.missing]
    if len(present) < 3:
        raise VisualQAError("need at least 3 valid points to inject a spike")
    rng = random.Random(seed)
    target = rng.randrange(1, len(present) - 1)
    direction = rng.choice(["upward", "downward"])
    values = np.asarray([r.value for r in present], dtype=np.float64)
    sigma = float(values.std())
    magnitude = k_sigma * sigma if sigma > 0 else max(1.0, abs(values.mean()) * 0.1)
    delta = magnitude if direction == "upward" else -magnitude

    target_ts = present[target].timestamp
    perturbed = tuple(
        CanonicalRecord(
            timestamp=r.timestamp, variable=r.variable,
            value=(r.value + delta if r.timestamp == target_ts else r.value),
            unit=r.unit, location=r.location, city=r.city, source=r.source,
        )
        for r in series.records
    )
    injection = SpikeInjection(index=target,
                               timestamp=format_timestamp(target_ts)[:10],
                               direction=direction, magnitude=magnitude)
    return CanonicalSeries(perturbed), injection


def mask_span(series: CanonicalSeries, seed: int,
              fraction: float = DEFAULT_MASK_FRACTION) -> tuple[CanonicalSeries, SpanMask]:
    """Copy the series with a contiguous span replaced by missing records.

    The gold answer is the true mean over the masked values; the matching
    tolerance is the std of the surrounding (unmasked) values.
    """
    present = [r for r in series.records if not r.missing]
    length = max(1, int(round(len(present) * fraction)))
    if len(present) <= length + 2:
        raise VisualQAError("series too short to mask a span")
    rng = random.Random(seed)
    start = rng.randrange(1, len(present) - length)
    masked = present[start:start + length]
    masked_ts = {r.timestamp for r in masked}
    true_mean = float(np.mean([r.value for r in masked]))
    surrounding = [r.value for r in present if r.timestamp not in masked_ts]
    tolerance = max(float(np.std(surrounding)), 1e-9)

    perturbed = tuple(
        CanonicalRecord(
            timestamp=r.timestamp, variable=r.variable,
            value=None if r.timestamp in masked_ts else r.value,
            unit=r.unit, location=r.location, city=r.city, source=r.source,
        )
        for r in series.records
    )
    span = SpanMask(start=format_timestamp(masked[0].timestamp)[:10],
                    end=format_timestamp(masked[-1].timestamp)[:10],
                    true_mean=true_mean, tolerance=tolerance)
    return CanonicalSeries(perturbed), span


def _chart_fact(artifact: ChartArtifact) -> tuple[AtomicFact, Chunk]:
    """A synthetic evidence fact whose chunk is the chart metadata text."""
    meta = artifact.metadata
    statement = (f"The chart {artifact.chart_id} shows {meta.variable} for "
                 f"{meta.city or 'the selected location'} with mean "
                 f"{meta.mean:.6g} {meta.unit}.")
    tokens = tuple(json.dumps(metadata_to_jsonable(meta), sort_keys=True).split())
    chunk = Chunk(doc_id=f"chart:{artifact.chart_id}", start=0, tokens=tokens,
                  section_path=(), provenance=artifact.provenance)
    fact = AtomicFact(statement=statement, chunk_ref=chunk.chunk_id,
                      provenance=artifact.provenance)
    return fact, chunk


def _date_options(series: CanonicalSeries, gold: str, rng: random.Random,
                  n_options: int = 4) -> list[str]:
    days = sorted({format_timestamp(r.timestamp)[:10]
                   for r in series.records if not r.missing})
    distractors = [d for d in days if d != gold]
    rng.shuffle(distractors)
    options = [gold] + distractors[:n_options - 1]
    rng.shuffle(options)
    return options


def synthesize_visual_qa(artifact: ChartArtifact, category: str, format: str,
                         backend=None, *, seed: int = 0,
                         chart_store: dict | None = None,
                         counters: Counter | None = None,
                         evidence_store: dict | None = None) -> list[QAItem]:
    """Generate QA items for one chart window.

    ``anomaly`` and ``imputation`` run deterministically (seeded) with gold
    answers known by construction; ``forecasting`` and ``reasoning`` require a
    backend. New perturbed charts land in ``chart_store`` keyed by chart id;
    evidence facts/chunks land in ``evidence_store``.
    """
    if category not in CATEGORIES:
        raise VisualQAError(f"unknown category {category!r}")
    counters = counters if counters is not None else Counter()
    base_series = series_from_csv(artifact.data_csv)

    if category == "anomaly":
        return _anomaly_items(artifact, base_series, format, seed,
                              chart_store, evidence_store)
    if category == "imputation":
        return _imputation_items(artifact, base_series, format, seed,
                                 chart_store, evidence_store)

    if backend is None:
        raise VisualQAError(f"category {category!r} requires a backend")
    fact, chunk = _chart_fact(artifact)
    _remember(evidence_store, fact, chunk, artifact, chart_store)
    prompt = (
        f"Write {format} questions of category '{category}' about this chart. "
        f"Chart metadata: {json.dumps(metadata_to_jsonable(artifact.metadata), sort_keys=True)}\n"
        f"Reply with a JSON array in the documented shape."
    )
    emission = backend.complete([{"role": "user", "content": prompt}])
    items = parse_qa_emission(emission, format, evidence=(fact.fact_id,), split="visual")
    valid = validate_items(items, counters=counters)
    return [_with_chart(item, artifact.chart_id) for item in valid]


def _anomaly_items(artifact, base_series, fmt, seed, chart_store, evidence_store):
    perturbed, injection = inject_spike(base_series, seed=seed)
    chart = chart_for_series(perturbed, chart_id=f"{artifact.chart_id}_anomaly_s{seed}",
                             provenance=artifact.provenance)
    fact, chunk = _chart_fact(chart)
    _remember(evidence_store, fact, chunk, chart, chart_store)
    rng = random.Random(seed + 1)
    gold = injection.timestamp
    question = (f"The chart shows {artifact.metadata.variable} for "
                f"{artifact.metadata.city or 'the selected location'}. On which date does "
                f"the series show an abnormal {injection.direction} spike?")
    if fmt == "mcq":
        options = _date_options(perturbed, gold, rng)
        items = [QAItem(format="mcq", question=question, answer=gold,
                        options=tuple(options), evidence=(fact.fact_id,),
                        split="visual")]
    elif fmt == "open":
        items = [QAItem(format="open", question=question, answer=gold,
                        evidence=(fact.fact_id,), split="visual")]
    else:  # tf pair: entailed + contradicted
        wrong = _date_options(perturbed, gold, rng, n_options=2)
        distractor = next(d for d in wrong if d != gold)
        stem = f"The series shows an abnormal {injection.direction} spike on {{}}."
        items = [
            QAItem(format="tf", question=stem.format(gold), answer="true",
                   evidence=(fact.fact_id,), split="visual"),
            QAItem(format="tf", question=stem.format(distractor), answer="false",
                   evidence=(fact.fact_id,), split="visual"),
        ]
    return [_with_chart(item, chart.chart_id) for item in items]


def _imputation_items(artifact, base_series, fmt, seed, chart_store, evidence_store):
    perturbed, span = mask_span(base_series, seed=seed)
    chart = chart_for_series(perturbed, chart_id=f"{artifact.chart_id}_imputation_s{seed}",
                             provenance=artifact.provenance)
    fact, chunk = _chart_fact(chart)
    _remember(evidence_store, fact, chunk, chart, chart_store)
    gold = repr(span.true_mean)
    unit = artifact.metadata.unit
    question = (f"The chart is missing values between {span.start} and {span.end}. "
                f"Based on the surrounding data, estimate the mean "
                f"{artifact.metadata.variable} ({unit}) over the missing segment.")
    if fmt == "mcq":
        rng = random.Random(seed + 1)
        spread = max(4.0 * span.tolerance, 1.0, abs(span.true_mean) * 0.05)
        distractors = [repr(span.true_mean + spread * o) for o in (1.0, -1.0, 2.0)]
        options = [gold] + distractors
        rng.shuffle(options)
        items = [QAItem(format="mcq", question=question, answer=gold,
                        options=tuple(options), evidence=(fact.fact_id,),
                        split="visual", answer_tolerance=span.tolerance)]
    elif fmt == "open":
        items = [QAItem(format="open", question=question, answer=gold,
                        evidence=(fact.fact_id,), split="visual",
                        answer_tolerance=span.tolerance)]
    else:
        items = [
            QAItem(format="tf",
                   question=(f"The mean {artifact.metadata.variable} over the missing "
                             f"segment is approximately {span.true_mean:.6g} {unit}."),
                   answer="true", evidence=(fact.fact_id,), split="visual",
                   answer_tolerance=span.tolerance),
            QAItem(format="tf",
                   question=(f"The mean {artifact.metadata.variable} over the missing "
                             f"segment is approximately {span.true_mean + max(10 * span.tolerance, 5.0):.6g} {unit}."),
                   answer="false", evidence=(fact.fact_id,), split="visual",
                   answer_tolerance=span.tolerance),
        ]
    return [_with_chart(item, chart.chart_id) for item in items]


def _remember(evidence_store, fact, chunk, chart, chart_store):
    if chart_store is not None:
        chart_store[chart.chart_id] = chart
    if evidence_store is not None:
        evidence_store[fact.fact_id] = (fact, chunk)


def _with_chart(item: QAItem, chart_id: str) -> QAItem:
    return QAItem(format=item.format, question=item.question, answer=item.answer,
                  options=item.options, evidence=item.evidence, split=item.split,
                  chart_ref=chart_id, answer_tolerance=item.answer_tolerance,
                  review_flag=item.review_flag)
