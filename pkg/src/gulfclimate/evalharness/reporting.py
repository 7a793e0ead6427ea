"""Deterministic report rendering: fixed-column text and versioned CSV."""

from __future__ import annotations

import csv
import io
from pathlib import Path

from ..core.csvio import SinkFailure
from .runner import MetricReport

REPORT_CSV_VERSION = 1

_METRIC_ORDER = (
    ("InstAcc", "inst_acc"),
    ("ToolAcc", "tool_acc"),
    ("ArgAcc", "arg_acc"),
    ("SummAcc", "summ_acc"),
    ("AnsAcc", "ans_acc"),
    ("AnsAcc+I", "ans_acc_i"),
    ("Format Err. (%)", "format_err_pct"),
    ("Arg. Err. (%)", "arg_err_pct"),
    ("N/A (%)", "na_pct"),
)


def render_report(report: MetricReport) -> str:
    """Fixed-width table of the populated headline metrics."""
    lines = [f"mode: {report.mode}", ""]
    lines.append(f"{'metric':<18}{'value':>8}")
    lines.append("-" * 26)
    for label, attr in _METRIC_ORDER:
        value = getattr(report, attr)
        if value is None:
            continue
        lines.append(f"{label:<18}{value:>8.1f}")
    lines.append("")
    lines.append(f"steps scored: {len(report.step_rows)}")
    lines.append(f"instances: {len(report.instance_rows)}")
    return "\n".join(lines) + "\n"


def write_report_csv(report: MetricReport, sink) -> None:
    """Headline metrics as a two-column CSV with a version row."""
    if isinstance(sink, (str, Path)):
        try:
            with open(sink, "w", encoding="utf-8", newline="") as fh:
                write_report_csv(report, fh)
            return
        except OSError as exc:
            raise SinkFailure(str(exc)) from exc
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["schema_version", REPORT_CSV_VERSION])
    writer.writerow(["mode", report.mode])
    for label, attr in _METRIC_ORDER:
        value = getattr(report, attr)
        if value is not None:
            writer.writerow([label, repr(round(value, 10))])


def write_step_rows_csv(report: MetricReport, sink) -> None:
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            write_step_rows_csv(report, fh)
        return
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["instance_id", "step_index", "inst", "tool", "arg", "summ",
                     "error_class"])
    for row in report.step_rows:
        writer.writerow([row.instance_id, row.step_index, row.inst, row.tool,
                         row.arg, row.summ, row.error_class])


def write_instance_rows_csv(report: MetricReport, sink) -> None:
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            write_instance_rows_csv(report, fh)
        return
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["instance_id", "answered", "answered_with_images", "chart_ok",
                     "missed_facts", "failure"])
    for row in report.instance_rows:
        writer.writerow([
            row.instance_id,
            "" if row.answered is None else row.answered,
            "" if row.answered_with_images is None else row.answered_with_images,
            "" if row.chart_ok is None else int(row.chart_ok),
            "|".join(row.missed_facts),
            row.failure or "",
        ])


def report_csv_text(report: MetricReport) -> str:
    buf = io.StringIO()
    write_report_csv(report, buf)
    return buf.getvalue()
