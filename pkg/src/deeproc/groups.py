"""Risk groups: resolving group boundaries and assembling per-group measures.

Groups are ordered left to right in the ROC plot, which is highest to
lowest predicted risk; group 1 is the leftmost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Literal, Sequence

import numpy as np

from .errors import SpecError
from .partial_areas import (
    GroupBounds,
    auc,
    concordant_partial_auc,
    partial_auc,
    partial_auc_horizontal,
)
from .post_test import (
    DEFAULT_LR_CAP,
    DEFAULT_RESOLUTION,
    auprc,
    avg_likelihood_ratios,
    avg_predictive_value,
    confusion_at_threshold,
)
from .report import AnalysisReport, GlobalMeasures, GroupMeasures
from .roc_core import RocCurve, ScoreDataset, c_statistic, c_statistic_ranked, fpr_at_tpr, tpr_at_fpr

# Above this many pairs the report's C statistic switches from exhaustive
# pair counting to mid-ranks.
PAIRWISE_C_LIMIT = 4_000_000


class Axis(str, Enum):
    FPR = "fpr"
    TPR = "tpr"
    SCORE = "score"


@dataclass(frozen=True)
class GroupSpec:
    """How to split the curve into groups.

    ``boundaries`` run from 0 to 1. On the FPR and TPR axes they are rates;
    on the SCORE axis they are the cumulative fraction of instances, taken
    from the highest score down.
    """

    axis: Axis = Axis.FPR
    boundaries: tuple[float, ...] = (0.0, 1.0)
    min_group_size: int = 25
    preferred_group_size: int = 50

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "axis", Axis(self.axis))
        except ValueError:
            raise SpecError(f"unknown axis {self.axis!r}") from None
        b = tuple(float(v) for v in self.boundaries)
        if len(b) < 2:
            raise SpecError("need at least two boundaries")
        if b[0] != 0.0 or b[-1] != 1.0:
            raise SpecError(f"boundaries must start at 0 and end at 1, got {b}")
        if any(not math.isfinite(v) for v in b) or any(hi <= lo for lo, hi in zip(b, b[1:])):
            raise SpecError(f"boundaries must be strictly increasing, got {b}")
        if self.min_group_size < 1:
            raise SpecError("min_group_size must be >= 1")
        object.__setattr__(self, "boundaries", b)

    @classmethod
    def equal(cls, k: int, axis: Axis | str = Axis.FPR, **kwargs) -> "GroupSpec":
        if k < 1:
            raise SpecError(f"number of groups must be >= 1, got {k}")
        bounds = tuple(i / k for i in range(k + 1))
        return cls(axis=axis, boundaries=bounds, **kwargs)

    @property
    def n_groups(self) -> int:
        return len(self.boundaries) - 1


def _real_thresholds(curve: RocCurve, data: ScoreDataset) -> np.ndarray:
    thr = curve.thresholds.copy()
    thr[-1] = float(np.min(data.scores))
    return thr


def _boundary_points(curve: RocCurve, data: ScoreDataset, spec: GroupSpec) -> list[tuple[float, float, int]]:
    """(x, y, vertex) for every boundary; vertex is the last curve vertex at or before the point."""
    fpr, tpr = curve.fpr, curve.tpr
    last = len(fpr) - 1
    real_thr = _real_thresholds(curve, data) if spec.axis is Axis.SCORE else None
    points = []
    for b in spec.boundaries:
        if b == 0.0:
            points.append((0.0, 0.0, 0))
            continue
        if b == 1.0:
            points.append((1.0, 1.0, last))
            continue
        if spec.axis is Axis.FPR:
            j = int(np.searchsorted(fpr, b, side="right")) - 1
            points.append((b, float(tpr_at_fpr(curve, b)), j))
        elif spec.axis is Axis.TPR:
            j = int(np.searchsorted(tpr, b, side="left"))
            if tpr[j] != b:
                j -= 1
            points.append((float(fpr_at_tpr(curve, b)), b, j))
        else:
            t = float(np.quantile(data.scores, 1.0 - b))
            j = int(np.count_nonzero(real_thr[1:] >= t))
            points.append((float(fpr[j]), float(tpr[j]), j))
    return points


def resolve_groups(curve: RocCurve, data: ScoreDataset, spec: GroupSpec) -> list[GroupBounds]:
    """Turn a group spec into concrete bounds on ``curve``.

    FPR boundaries take their TPR from the curve (top of a riser); TPR
    boundaries take their FPR from the curve (left end of a run); score
    boundaries are score quantiles snapped to the operating point
    ``score >= quantile``. The outer boundaries are always (0, 0) and
    (1, 1), so both ranges partition [0, 1].
    """
    data.require_both_classes()
    pts = _boundary_points(curve, data, spec)
    thr = _real_thresholds(curve, data)
    thr[0] = math.inf
    thr[-1] = -math.inf
    groups = []
    for (xa, ya, ja), (xb, yb, jb) in zip(pts, pts[1:]):
        groups.append(GroupBounds(xa, xb, ya, yb, threshold_hi=float(thr[ja]), threshold_lo=float(thr[jb])))
    return groups


def _group_counts(curve: RocCurve, data: ScoreDataset, spec: GroupSpec) -> list[tuple[int, int]]:
    pts = _boundary_points(curve, data, spec)
    out = []
    for (_, _, ja), (_, _, jb) in zip(pts, pts[1:]):
        out.append((int(curve.tp[jb] - curve.tp[ja]), int(curve.fp[jb] - curve.fp[ja])))
    return out


def count_in_groups(groups: Sequence[GroupBounds], data: ScoreDataset) -> list[int]:
    """Number of instances with ``threshold_lo <= score < threshold_hi`` per group."""
    s = np.sort(data.scores)
    counts = []
    for g in groups:
        lo = np.searchsorted(s, g.threshold_lo, side="left")
        hi = np.searchsorted(s, g.threshold_hi, side="left")
        counts.append(int(hi - lo))
    return counts


@dataclass(frozen=True)
class SizeNotice:
    level: Literal["warning", "info"]
    group: int
    count: int
    message: str


def check_group_sizes(groups: Sequence[GroupBounds], data: ScoreDataset, spec: GroupSpec) -> list[SizeNotice]:
    """Advisory group-size checks; never raises.

    A group below ``min_group_size`` instances gets a warning, a group below
    ``preferred_group_size`` an info notice.
    """
    notices = []
    for i, n in enumerate(count_in_groups(groups, data), start=1):
        if n < spec.min_group_size:
            notices.append(SizeNotice(
                "warning", i, n, f"group {i} has {n} instances, fewer than the minimum {spec.min_group_size}"
            ))
        elif n < spec.preferred_group_size:
            notices.append(SizeNotice(
                "info", i, n, f"group {i} has {n} instances, fewer than the preferred {spec.preferred_group_size}"
            ))
    return notices


def group_measures(
    curve: RocCurve,
    bounds: GroupBounds,
    *,
    prevalence: float | None = None,
    counts: tuple[int, int] = (0, 0),
    resolution: int = DEFAULT_RESOLUTION,
    lr_cap: float = DEFAULT_LR_CAP,
    size_warning: bool = False,
) -> GroupMeasures:
    """All measures for one group. ``counts`` is (positives, negatives) in the group."""
    cp = concordant_partial_auc(curve, bounds)
    vert = partial_auc(curve, bounds.x1, bounds.x2)
    horiz = partial_auc_horizontal(curve, bounds.y1, bounds.y2)
    ppv = avg_predictive_value(curve, bounds, "positive", prevalence, resolution)
    npv = avg_predictive_value(curve, bounds, "negative", prevalence, resolution)
    lrs = avg_likelihood_ratios(curve, bounds, cap=lr_cap, resolution=resolution)
    flags = [f"degenerate_{a}" for a in cp.degenerate_axes]
    if lrs.capped:
        flags.append("lr_capped")
    return GroupMeasures(
        bounds=bounds,
        bal_avg_accuracy=cp.normalized,
        avg_sensitivity=vert.normalized,
        avg_specificity=horiz.normalized,
        cpauc_raw=cp.raw,
        pauc_raw=vert.raw,
        paucx_raw=horiz.raw,
        avg_ppv=ppv,
        avg_npv=npv,
        avg_balanced_predictive_value=0.5 * (ppv + npv) if ppv is not None and npv is not None else None,
        avg_lr_plus=lrs.lr_plus,
        avg_lr_minus=lrs.lr_minus,
        diagnostic_odds_ratio=lrs.dor,
        instance_count=counts[0] + counts[1],
        positive_count=counts[0],
        negative_count=counts[1],
        degeneracy_flags=tuple(flags),
        size_warning=size_warning,
    )


def _measure_bounds(groups: list[GroupBounds], spec: GroupSpec, y_ranges: str) -> list[GroupBounds]:
    if y_ranges == "derived":
        return groups
    if y_ranges != "independent":
        raise SpecError(f"y_ranges must be 'derived' or 'independent', got {y_ranges!r}")
    if spec.axis is Axis.SCORE:
        raise SpecError("independent ranges are only defined for the FPR and TPR axes")
    b = spec.boundaries
    out = []
    for g, lo, hi in zip(groups, b, b[1:]):
        if spec.axis is Axis.FPR:
            out.append(GroupBounds(g.x1, g.x2, lo, hi, g.threshold_hi, g.threshold_lo))
        else:
            out.append(GroupBounds(lo, hi, g.y1, g.y2, g.threshold_hi, g.threshold_lo))
    return out


def analyze_groups(
    curve: RocCurve,
    data: ScoreDataset,
    spec: GroupSpec,
    *,
    prevalence: float | None = None,
    threshold: float = 0.5,
    y_ranges: str = "derived",
    resolution: int = DEFAULT_RESOLUTION,
    lr_cap: float = DEFAULT_LR_CAP,
) -> AnalysisReport:
    """Global and per-group measure table for one classifier.

    ``y_ranges='independent'`` measures the horizontal area of FPR groups over
    the same boundaries applied to the TPR axis (and vice versa) instead of
    the ranges derived from the curve.
    """
    data.require_both_classes()
    groups = resolve_groups(curve, data, spec)
    notices = check_group_sizes(groups, data, spec)
    warned = {n.group for n in notices if n.level == "warning"}
    counts = _group_counts(curve, data, spec)
    measured = _measure_bounds(groups, spec, y_ranges)
    pi = curve.prevalence if prevalence is None else float(prevalence)

    warnings = [f"{n.level}: {n.message}" for n in notices]
    if spec.axis is Axis.SCORE and (data.scores.min() < 0.0 or data.scores.max() > 1.0):
        warnings.append("warning: score-percentile groups on scores outside [0, 1]; scores are not probabilities")

    opts = dict(prevalence=pi, resolution=resolution, lr_cap=lr_cap)
    per_group = tuple(
        group_measures(curve, b, counts=c, size_warning=(i in warned), **opts)
        for i, (b, c) in enumerate(zip(measured, counts), start=1)
    )
    whole = group_measures(curve, GroupBounds.full(), counts=(data.positive_count, data.negative_count), **opts)

    n_pairs = data.positive_count * data.negative_count
    c_method = "pairwise" if n_pairs <= PAIRWISE_C_LIMIT else "ranked"
    c_stat = c_statistic(data) if c_method == "pairwise" else c_statistic_ranked(data)

    config = {
        "axis": spec.axis.value,
        "boundaries": spec.boundaries,
        "min_group_size": spec.min_group_size,
        "preferred_group_size": spec.preferred_group_size,
        "prevalence": pi,
        "prevalence_source": "empirical" if prevalence is None else "explicit",
        "threshold": float(threshold),
        "decision_rule": "score >= threshold is positive",
        "boundary_rule": "fpr: top of riser; tpr: left end of run; score: quantile snapped to operating point",
        "y_ranges": y_ranges,
        "quadrature": "composite midpoint",
        "quadrature_resolution": resolution,
        "lr_cap": lr_cap,
        "c_statistic_method": c_method,
    }
    glob = GlobalMeasures(
        auc=auc(curve),
        c_statistic=c_stat,
        auprc=auprc(curve),
        positive_count=data.positive_count,
        negative_count=data.negative_count,
        whole=whole,
        point=confusion_at_threshold(data, threshold),
    )
    return AnalysisReport(config=config, global_measures=glob, groups=per_group, warnings=tuple(warnings))


def analyze(data: ScoreDataset, spec: GroupSpec | None = None, **kwargs) -> AnalysisReport:
    """Convenience wrapper: build the curve and analyze ``data``."""
    from .roc_core import build_curve

    return analyze_groups(build_curve(data), data, spec or GroupSpec(), **kwargs)
