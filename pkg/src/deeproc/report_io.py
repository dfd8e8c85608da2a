"""Score-file ingestion, report rendering and ROC plot emission."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import fields
from pathlib import Path
from typing import Literal, Sequence

import numpy as np

from .errors import EmptyFileError, IoError, LabelError, NonFiniteScoreError, ParseError
from .partial_areas import GroupBounds
from .report import AnalysisReport, report_from_dict, report_to_dict
from .roc_core import RocCurve, ScoreDataset

_TRUE = {"1", "true"}
_FALSE = {"0", "false"}
# Plain decimal or scientific notation; rejects "1_000", "nan", "inf", "1,5".
_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _label_maps(positive_label: str | None, negative_label: str | None) -> tuple[set[str], set[str]]:
    if (positive_label is None) != (negative_label is None):
        raise ValueError("positive_label and negative_label must be given together")
    if positive_label is None:
        return _TRUE, _FALSE
    return {positive_label.strip().lower()}, {negative_label.strip().lower()}


def _parse_score(text: str, line: int) -> float:
    t = text.strip()
    if t.lower() in ("nan", "inf", "+inf", "-inf", "infinity", "+infinity", "-infinity"):
        raise NonFiniteScoreError(f"line {line}: score {t!r} is not finite")
    if not _NUMBER.match(t):
        raise ParseError(f"cannot parse score {t!r}", line)
    v = float(t)
    if not math.isfinite(v):
        raise NonFiniteScoreError(f"line {line}: score {t!r} is not finite")
    return v


def _read_table(
    path: str | Path,
    delimiter: str,
    positive_label: str | None,
    negative_label: str | None,
) -> tuple[np.ndarray, list[np.ndarray]]:
    pos_set, neg_set = _label_maps(positive_label, negative_label)
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            rows = [(i, r) for i, r in enumerate(csv.reader(fh, delimiter=delimiter), start=1)]
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    rows = [(i, r) for i, r in rows if r and any(c.strip() for c in r)]
    if not rows:
        raise EmptyFileError(f"{path} contains no rows")

    first_line, first = rows[0]
    label0 = first[0].strip().lower()
    is_header = label0 not in pos_set | neg_set and not (
        len(first) > 1 and _NUMBER.match(first[1].strip())
    )
    if is_header:
        rows = rows[1:]
        if not rows:
            raise EmptyFileError(f"{path} has a header but no data rows")
    width = len(rows[0][1])
    if width not in (2, 3):
        raise ParseError(f"expected 2 or 3 columns (label, score[, score2]), got {width}", rows[0][0])

    labels = np.empty(len(rows), dtype=bool)
    scores = np.empty((width - 1, len(rows)), dtype=np.float64)
    unknown: dict[str, int] = {}
    for k, (line, row) in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"expected {width} columns, got {len(row)}", line)
        lab = row[0].strip().lower()
        if lab in pos_set:
            labels[k] = True
        elif lab in neg_set:
            labels[k] = False
        else:
            unknown.setdefault(row[0].strip(), line)
        for c in range(1, width):
            scores[c - 1, k] = _parse_score(row[c], line)
    if unknown:
        names = sorted(unknown)
        raise LabelError(
            f"unrecognized labels {names} (first at line {min(unknown.values())})",
            labels=names,
            line=min(unknown.values()),
        )
    return labels, list(scores)


def read_scores(
    path: str | Path,
    delimiter: str = ",",
    positive_label: str | None = None,
    negative_label: str | None = None,
) -> ScoreDataset:
    """Read ``label,score`` rows (header optional) into a dataset.

    Labels may be 0/1 or true/false, or a custom pair given by
    ``positive_label``/``negative_label``. A third column, if present, is
    ignored here; see :func:`read_score_pair`. Single-class files parse
    fine; analyses reject them later.
    """
    labels, cols = _read_table(path, delimiter, positive_label, negative_label)
    return ScoreDataset(labels, cols[0])


def read_score_pair(
    path: str | Path,
    delimiter: str = ",",
    positive_label: str | None = None,
    negative_label: str | None = None,
) -> tuple[ScoreDataset, ScoreDataset]:
    """Read ``label,score_a,score_b`` rows into two paired datasets."""
    labels, cols = _read_table(path, delimiter, positive_label, negative_label)
    if len(cols) != 2:
        raise ParseError(f"{path}: paired comparison needs two score columns")
    return ScoreDataset(labels, cols[0]), ScoreDataset(labels, cols[1])


def write_scores(path: str | Path, data: ScoreDataset, delimiter: str = ",") -> None:
    """Write a dataset in the input format, full float precision."""
    buf = io.StringIO()
    buf.write(f"label{delimiter}score\n")
    for lab, s in zip(data.labels, data.scores):
        buf.write(f"{int(lab)}{delimiter}{float(s)!r}\n")
    try:
        Path(path).write_text(buf.getvalue(), encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


# -- rendering --------------------------------------------------------------

_COLUMN_NAMES = {1: ["Whole"], 2: ["Left", "Right"], 3: ["Left", "Mid", "Right"]}
_RISK_NAMES = {1: ["All"], 2: ["High", "Low"], 3: ["High", "Med", "Low"]}
_AXIS_TITLES = {
    "fpr": "ROC horizontal axis (FPR):",
    "tpr": "ROC vertical axis (TPR):",
    "score": "Score percentile (high to low):",
}

_GROUP_ROWS = [
    ("Group Bal Avg Acc = cpAUCn", "bal_avg_accuracy"),
    ("Group Avg Sens = pAUCn", "avg_sensitivity"),
    ("Group Avg Spec = pAUCxn", "avg_specificity"),
    ("Group Avg PPV", "avg_ppv"),
    ("Group Avg NPV", "avg_npv"),
    ("Group Avg Bal Pred Value", "avg_balanced_predictive_value"),
    ("Group Avg LR+", "avg_lr_plus"),
    ("Group Avg LR-", "avg_lr_minus"),
    ("Group Avg DOR", "diagnostic_odds_ratio"),
]

_POINT_ROWS = [
    ("Positive predictive value", "ppv"),
    ("Negative predictive value", "npv"),
    ("Sensitivity", "sens"),
    ("Specificity", "spec"),
    ("Balanced accuracy", "balanced_accuracy"),
    ("Likelihood ratio +", "lr_plus"),
    ("Diagnostic odds ratio", "dor"),
]


def _fmt(v: float | None, precision: int) -> str:
    if v is None:
        return "-"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.{precision}f}"


def _fmt_bound(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    if s.startswith("0."):
        s = s[1:]
    return s or "0"


def _column_headers(report: AnalysisReport) -> tuple[list[str], list[str], list[str]]:
    k = len(report.groups)
    names = _COLUMN_NAMES.get(k, [f"G{i}" for i in range(1, k + 1)])
    risks = _RISK_NAMES.get(k, ["High"] + [f"R{i}" for i in range(2, k)] + ["Low"])
    axis = report.config.get("axis", "fpr")
    if axis == "tpr":
        edges = [(g.bounds.y1, g.bounds.y2) for g in report.groups]
    elif axis == "score":
        b = list(report.config["boundaries"])
        edges = list(zip(b, b[1:]))
    else:
        edges = [(g.bounds.x1, g.bounds.x2) for g in report.groups]
    ranges = [f"[{_fmt_bound(lo)},{_fmt_bound(hi)}]" for lo, hi in edges]
    return ["Global"] + names, ["[0,1]"] + ranges, ["All"] + risks


def _render_text(report: AnalysisReport, precision: int) -> str:
    g = report.global_measures
    names, ranges, risks = _column_headers(report)
    axis_title = _AXIS_TITLES.get(report.config.get("axis", "fpr"), _AXIS_TITLES["fpr"])
    rows: list[list[str] | None] = [
        [axis_title] + names,
        [""] + ranges,
        ["Probability/risk group:"] + risks,
        None,
        ["Bal Avg Accuracy = AUC", _fmt(g.auc, precision)] + [""] * len(report.groups),
    ]
    for title, attr in _GROUP_ROWS:
        rows.append([title, _fmt(getattr(g.whole, attr), precision)]
                    + [_fmt(getattr(m, attr), precision) for m in report.groups])
    rows.append(["Instances (pos/neg)", f"{g.positive_count}/{g.negative_count}"]
                + [f"{m.positive_count}/{m.negative_count}" for m in report.groups])
    rows.append(None)
    rows.append(["C statistic", _fmt(g.c_statistic, precision)] + [""] * len(report.groups))
    rows.append(["AUPRC", _fmt(g.auprc, precision)] + [""] * len(report.groups))
    t = g.point.threshold
    for title, attr in _POINT_ROWS:
        v = getattr(g.point, attr)
        text = "-" if v is None else f"{_fmt(v, precision)} at a point (t={t:g})"
        rows.append([title, text])
    rows.append(None)

    widths = [0] * (len(report.groups) + 2)
    for r in rows:
        if r is None or len(r) < len(widths):
            continue
        for i, cell in enumerate(r):
            widths[i] = max(widths[i], len(cell))
    total = sum(widths) + 2 * (len(widths) - 1)
    out = []
    for r in rows:
        if r is None:
            out.append("-" * total)
        elif len(r) < len(widths):
            out.append(f"{r[0].ljust(widths[0])}  {r[1]}".rstrip())
        else:
            cells = [r[0].ljust(widths[0])] + [c.ljust(w) for c, w in zip(r[1:], widths[1:])]
            out.append("  ".join(cells).rstrip())
    for key, ci in report.intervals.items():
        out.append(
            f"{ci.level * 100:g}% CI {key}: {_fmt(ci.point, precision)} "
            f"[{_fmt(ci.lower, precision)}, {_fmt(ci.upper, precision)}] "
            f"({ci.replicates_used} replicates, {ci.degenerate_replicates} degenerate)"
        )
    for flagged in _flag_lines(report):
        out.append(flagged)
    for w in report.warnings:
        out.append(w)
    return "\n".join(out) + "\n"


def _flag_lines(report: AnalysisReport) -> list[str]:
    lines = []
    for i, m in enumerate(report.groups, start=1):
        if m.degeneracy_flags:
            lines.append(f"note: group {i} flags: {', '.join(m.degeneracy_flags)}")
    return lines


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def _render_delimited(report: AnalysisReport, delimiter: str) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    w.writerow(["scope", "measure", "value"])
    g = report.global_measures
    for name in ("auc", "c_statistic", "auprc", "positive_count", "negative_count"):
        w.writerow(["global", name, _cell(getattr(g, name))])
    for f in fields(g.point):
        w.writerow(["point", f.name, _cell(getattr(g.point, f.name))])
    for scope, m in [("whole", g.whole)] + [(f"group{i}", m) for i, m in enumerate(report.groups, 1)]:
        for b in ("x1", "x2", "y1", "y2", "threshold_hi", "threshold_lo"):
            w.writerow([scope, b, _cell(getattr(m.bounds, b))])
        for _, attr in _GROUP_ROWS:
            w.writerow([scope, attr, _cell(getattr(m, attr))])
        for attr in ("cpauc_raw", "pauc_raw", "paucx_raw", "instance_count", "positive_count", "negative_count"):
            w.writerow([scope, attr, _cell(getattr(m, attr))])
        w.writerow([scope, "degeneracy_flags", ";".join(m.degeneracy_flags)])
    for key, ci in report.intervals.items():
        for attr in ("point", "lower", "upper", "replicates_used", "degenerate_replicates", "level"):
            w.writerow([f"ci:{key}", attr, _cell(getattr(ci, attr))])
    return buf.getvalue()


Format = Literal["text", "delimited", "structured"]


def render_report(report: AnalysisReport, format: Format = "text", precision: int = 2, delimiter: str = ",") -> bytes:
    """Serialize a report.

    ``text`` is the human table (values rounded to ``precision`` decimals,
    undefined cells shown as ``-``); ``delimited`` and ``structured`` (JSON)
    carry full precision.
    """
    if format == "text":
        return _render_text(report, precision).encode("utf-8")
    if format == "delimited":
        return _render_delimited(report, delimiter).encode("utf-8")
    if format == "structured":
        return (json.dumps(report_to_dict(report), indent=2, allow_nan=False) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")


def parse_report(payload: bytes | str) -> AnalysisReport:
    """Inverse of ``render_report(..., 'structured')``."""
    if isinstance(payload, bytes):
        payload = payload.decode("utf-8")
    return report_from_dict(json.loads(payload))


# -- plotting ---------------------------------------------------------------

_SHADES = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860")


def emit_roc_plot(curve: RocCurve, groups: Sequence[GroupBounds], path: str | Path, size: int = 400) -> None:
    """Write a standalone SVG of the ROC curve with shaded groups.

    Draws the unit-square frame, the major diagonal, one translucent band per
    group over its FPR range, interior FPR boundaries (solid) and derived TPR
    boundaries (dashed), and the empirical curve on top.
    """
    m = 50
    full = size + 2 * m

    def px(x: float) -> str:
        return f"{m + x * size:.3f}"

    def py(y: float) -> str:
        return f"{m + (1.0 - y) * size:.3f}"

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{full}" height="{full}" '
        f'viewBox="0 0 {full} {full}">',
        f'<rect x="0" y="0" width="{full}" height="{full}" fill="white"/>',
    ]
    for i, g in enumerate(groups):
        if g.x2 > g.x1:
            parts.append(
                f'<rect class="group" x="{px(g.x1)}" y="{py(1.0)}" width="{g.dx * size:.3f}" '
                f'height="{size:.3f}" fill="{_SHADES[i % len(_SHADES)]}" fill-opacity="0.15"/>'
            )
    xs = sorted({g.x2 for g in groups[:-1]} | {g.x1 for g in groups[1:]})
    ys = sorted({g.y2 for g in groups[:-1]} | {g.y1 for g in groups[1:]})
    for x in xs:
        parts.append(f'<line class="xbound" x1="{px(x)}" y1="{py(0.0)}" x2="{px(x)}" y2="{py(1.0)}" '
                     f'stroke="gray" stroke-width="1"/>')
    for y in ys:
        parts.append(f'<line class="ybound" x1="{px(0.0)}" y1="{py(y)}" x2="{px(1.0)}" y2="{py(y)}" '
                     f'stroke="gray" stroke-width="1" stroke-dasharray="4 3"/>')
    parts.append(f'<line class="diagonal" x1="{px(0.0)}" y1="{py(0.0)}" x2="{px(1.0)}" y2="{py(1.0)}" '
                 f'stroke="gray" stroke-width="1" stroke-dasharray="2 2"/>')
    pts = " ".join(f"{px(x)},{py(y)}" for x, y in zip(curve.fpr, curve.tpr))
    parts.append(f'<polyline class="roc" points="{pts}" fill="none" stroke="black" stroke-width="2"/>')
    parts.append(f'<rect class="frame" x="{m}" y="{m}" width="{size}" height="{size}" '
                 f'fill="none" stroke="black" stroke-width="1"/>')
    for v in (0.0, 0.5, 1.0):
        parts.append(f'<text x="{px(v)}" y="{m + size + 16}" font-size="12" text-anchor="middle">{v:g}</text>')
        parts.append(f'<text x="{m - 8}" y="{float(py(v)) + 4:.3f}" font-size="12" text-anchor="end">{v:g}</text>')
    parts.append(f'<text x="{m + size / 2:g}" y="{full - 10}" font-size="14" text-anchor="middle">'
                 f'False positive rate (FPR)</text>')
    parts.append(f'<text x="14" y="{m + size / 2:g}" font-size="14" text-anchor="middle" '
                 f'transform="rotate(-90 14 {m + size / 2:g})">True positive rate (TPR)</text>')
    parts.append("</svg>")
    try:
        Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
