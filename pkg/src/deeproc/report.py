"""Report records and their versioned dictionary form.

The dictionary form is the structured output schema. Undefined values are
``null`` with the measure's name listed in the record's ``undefined`` field;
infinite values are written as the strings ``"inf"`` / ``"-inf"`` so the
document stays valid JSON.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields
from typing import Any

from ._version import __version__
from .partial_areas import GroupBounds
from .post_test import PointMeasures

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GroupMeasures:
    """Pre-test and post-test measures for one group (one report column)."""

    bounds: GroupBounds
    bal_avg_accuracy: float | None
    avg_sensitivity: float | None
    avg_specificity: float | None
    cpauc_raw: float
    pauc_raw: float
    paucx_raw: float
    avg_ppv: float | None
    avg_npv: float | None
    avg_balanced_predictive_value: float | None
    avg_lr_plus: float | None
    avg_lr_minus: float | None
    diagnostic_odds_ratio: float | None
    instance_count: int
    positive_count: int
    negative_count: int
    degeneracy_flags: tuple[str, ...] = ()
    size_warning: bool = False


@dataclass(frozen=True)
class GlobalMeasures:
    auc: float
    c_statistic: float
    auprc: float
    positive_count: int
    negative_count: int
    whole: GroupMeasures
    point: PointMeasures


@dataclass(frozen=True)
class IntervalEstimate:
    """Percentile bootstrap interval for one scalar measure."""

    point: float | None
    lower: float
    upper: float
    replicates_used: int
    degenerate_replicates: int
    level: float = 0.95
    method: str = "percentile"


@dataclass(frozen=True)
class AnalysisReport:
    config: dict[str, Any]
    global_measures: GlobalMeasures
    groups: tuple[GroupMeasures, ...]
    intervals: dict[str, IntervalEstimate] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def get(self, selector: str) -> float | None:
        """Look up a scalar by selector, e.g. ``auc``, ``group1.avg_ppv``, ``point.sens``."""
        return select(self, selector)

    def with_intervals(self, intervals: dict[str, IntervalEstimate]) -> "AnalysisReport":
        merged = dict(self.intervals)
        merged.update(intervals)
        return AnalysisReport(
            self.config, self.global_measures, self.groups, merged, self.warnings,
            self.tool_version, self.schema_version,
        )


GLOBAL_SCALARS = ("auc", "c_statistic", "auprc")
GROUP_SCALARS = tuple(
    f.name for f in fields(GroupMeasures) if f.name not in ("bounds", "degeneracy_flags", "size_warning")
)
POINT_SCALARS = tuple(f.name for f in fields(PointMeasures))


def parse_selector(selector: str) -> tuple[str, int | None, str]:
    """Split a selector into (scope, group index, field).

    Scopes are ``global``, ``whole`` (the full-range group), ``point`` and
    ``group`` (1-based index, leftmost first).
    """
    s = selector.strip()
    if s in GLOBAL_SCALARS:
        return "global", None, s
    head, _, name = s.partition(".")
    if head == "whole" and name in GROUP_SCALARS:
        return "whole", None, name
    if head == "point" and name in POINT_SCALARS:
        return "point", None, name
    if head.startswith("group") and head[5:].isdigit() and name in GROUP_SCALARS:
        idx = int(head[5:])
        if idx >= 1:
            return "group", idx, name
    raise KeyError(f"unknown measure selector {selector!r}")


def select(report: AnalysisReport, selector: str) -> float | None:
    scope, idx, name = parse_selector(selector)
    g = report.global_measures
    if scope == "global":
        return getattr(g, name)
    if scope == "whole":
        return getattr(g.whole, name)
    if scope == "point":
        return getattr(g.point, name)
    if idx > len(report.groups):
        raise KeyError(f"selector {selector!r}: report has {len(report.groups)} groups")
    return getattr(report.groups[idx - 1], name)


# -- dictionary form --------------------------------------------------------

def _enc(v: Any) -> Any:
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


def _dec(v: Any) -> Any:
    if v == "inf":
        return math.inf
    if v == "-inf":
        return -math.inf
    return v


def _record_to_dict(obj: Any) -> dict[str, Any]:
    out: dict[str, Any] = {}
    undefined = []
    for f in fields(obj):
        v = getattr(obj, f.name)
        if isinstance(v, GroupBounds):
            out[f.name] = {k: _enc(x) for k, x in asdict(v).items()}
        elif isinstance(v, tuple):
            out[f.name] = list(v)
        else:
            if v is None:
                undefined.append(f.name)
            out[f.name] = _enc(v)
    out["undefined"] = undefined
    return out


def _record_from_dict(cls: type, d: dict[str, Any]) -> Any:
    kwargs = {}
    for f in fields(cls):
        v = d[f.name]
        if f.name == "bounds":
            v = GroupBounds(**{k: _dec(x) for k, x in v.items()})
        elif isinstance(v, list):
            v = tuple(v)
        else:
            v = _dec(v)
        kwargs[f.name] = v
    return cls(**kwargs)


def report_to_dict(report: AnalysisReport) -> dict[str, Any]:
    g = report.global_measures
    return {
        "schema_version": report.schema_version,
        "tool_version": report.tool_version,
        "config": {k: _enc(v) for k, v in report.config.items()},
        "global": {
            "auc": g.auc,
            "c_statistic": g.c_statistic,
            "auprc": g.auprc,
            "positive_count": g.positive_count,
            "negative_count": g.negative_count,
            "whole": _record_to_dict(g.whole),
            "point": _record_to_dict(g.point),
        },
        "groups": [_record_to_dict(m) for m in report.groups],
        "intervals": {k: _record_to_dict(v) for k, v in report.intervals.items()},
        "warnings": list(report.warnings),
    }


def report_from_dict(d: dict[str, Any]) -> AnalysisReport:
    version = d.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema version {version!r}")
    g = d["global"]
    config = {}
    for k, v in d["config"].items():
        config[k] = tuple(v) if isinstance(v, list) else _dec(v)
    return AnalysisReport(
        config=config,
        global_measures=GlobalMeasures(
            auc=g["auc"],
            c_statistic=g["c_statistic"],
            auprc=g["auprc"],
            positive_count=g["positive_count"],
            negative_count=g["negative_count"],
            whole=_record_from_dict(GroupMeasures, g["whole"]),
            point=_record_from_dict(PointMeasures, g["point"]),
        ),
        groups=tuple(_record_from_dict(GroupMeasures, m) for m in d["groups"]),
        intervals={k: _record_from_dict(IntervalEstimate, v) for k, v in d["intervals"].items()},
        warnings=tuple(d["warnings"]),
        tool_version=d["tool_version"],
        schema_version=version,
    )
