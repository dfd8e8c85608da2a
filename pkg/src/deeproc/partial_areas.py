"""Whole and partial areas under an empirical ROC curve.

Vertical areas integrate sensitivity over an FPR range, horizontal areas
integrate specificity over a TPR range, and the concordant partial area is
their half-sum. All integrals are exact on the piecewise-linear curve:
boundaries that fall inside a segment are handled by inserting an
interpolated vertex, so areas over a partition add up to the whole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .errors import AlignmentError, BoundsError, DegenerateError, RangeError
from .roc_core import RocCurve, ScoreDataset

# Tolerance for deciding that a bound sits on a multiple of 1/N or 1/P.
_ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class GroupBounds:
    """A group of the ROC plot, ``(x1, x2, y1, y2)`` plus its score interval.

    Instances with ``threshold_lo <= score < threshold_hi`` belong to the
    group (with ``threshold_hi = +inf`` for the leftmost group).
    """

    x1: float
    x2: float
    y1: float
    y2: float
    threshold_hi: float = math.inf
    threshold_lo: float = -math.inf

    def __post_init__(self) -> None:
        for name in ("x1", "x2", "y1", "y2"):
            v = float(getattr(self, name))
            if not 0.0 <= v <= 1.0:
                raise BoundsError(f"{name}={v!r} outside [0, 1]")
            object.__setattr__(self, name, v)
        if self.x1 > self.x2:
            raise BoundsError(f"x1={self.x1!r} > x2={self.x2!r}")
        if self.y1 > self.y2:
            raise BoundsError(f"y1={self.y1!r} > y2={self.y2!r}")

    @classmethod
    def full(cls) -> "GroupBounds":
        return cls(0.0, 1.0, 0.0, 1.0)

    @property
    def dx(self) -> float:
        return self.x2 - self.x1

    @property
    def dy(self) -> float:
        return self.y2 - self.y1


@dataclass(frozen=True)
class AreaResult:
    """An area and its range-normalized value.

    ``normalized`` is ``None`` when the normalizing range has zero width.
    For the concordant partial area, ``degenerate_axes`` names the axis
    ('x' or 'y') whose range collapsed; the normalized value then falls back
    to the surviving term.
    """

    raw: float
    normalized: float | None
    degenerate: bool = False
    degenerate_axes: tuple[str, ...] = ()


class ArcSegment(NamedTuple):
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    @property
    def weight(self) -> float:
        return (self.y_hi - self.y_lo) + (self.x_hi - self.x_lo)


def _check_range(lo: float, hi: float, names: str) -> None:
    if not (0.0 <= lo <= 1.0 and 0.0 <= hi <= 1.0):
        raise BoundsError(f"{names} range [{lo!r}, {hi!r}] outside [0, 1]")
    if lo > hi:
        raise BoundsError(f"{names} range is reversed: {lo!r} > {hi!r}")


def _vertical_cumulative(curve: RocCurve, x: float) -> float:
    """Area under the curve on [0, x]."""
    fpr, tpr = curve.fpr, curve.tpr
    j = int(np.searchsorted(fpr, x, side="right")) - 1
    j = min(max(j, 0), len(fpr) - 1)
    area = float(curve._cum_area[j])
    if x > fpr[j] and j + 1 < len(fpr):
        t = (x - fpr[j]) / (fpr[j + 1] - fpr[j])
        y = tpr[j] + t * (tpr[j + 1] - tpr[j])
        area += (x - fpr[j]) * (tpr[j] + y) * 0.5
    return area


def _horizontal_cumulative(curve: RocCurve, y: float) -> float:
    """Area to the right of the curve (specificity integrated) on [0, y]."""
    fpr, tpr = curve.fpr, curve.tpr
    j = int(np.searchsorted(tpr, y, side="right")) - 1
    j = min(max(j, 0), len(tpr) - 1)
    area = float(curve._cum_area_h[j])
    if y > tpr[j] and j + 1 < len(tpr):
        t = (y - tpr[j]) / (tpr[j + 1] - tpr[j])
        x = fpr[j] + t * (fpr[j + 1] - fpr[j])
        area += (y - tpr[j]) * (1.0 - (fpr[j] + x) * 0.5)
    return area


def auc(curve: RocCurve) -> float:
    """Trapezoidal area under the whole curve."""
    return float(curve._cum_area[-1])


def partial_auc(curve: RocCurve, x1: float, x2: float) -> AreaResult:
    """Vertical partial area over FPR in ``[x1, x2]``.

    Normalized by ``x2 - x1`` it is the average sensitivity over the range.
    """
    _check_range(x1, x2, "FPR")
    if x1 == x2:
        return AreaResult(0.0, None, degenerate=True, degenerate_axes=("x",))
    raw = _vertical_cumulative(curve, x2) - _vertical_cumulative(curve, x1)
    return AreaResult(raw, raw / (x2 - x1))


def partial_auc_horizontal(curve: RocCurve, y1: float, y2: float) -> AreaResult:
    """Horizontal partial area over TPR in ``[y1, y2]``.

    Normalized by ``y2 - y1`` it is the average specificity over the range.
    """
    _check_range(y1, y2, "TPR")
    if y1 == y2:
        return AreaResult(0.0, None, degenerate=True, degenerate_axes=("y",))
    raw = _horizontal_cumulative(curve, y2) - _horizontal_cumulative(curve, y1)
    return AreaResult(raw, raw / (y2 - y1))


def concordant_partial_auc(curve: RocCurve, bounds: GroupBounds) -> AreaResult:
    """Concordant partial area: half vertical plus half horizontal area.

    The normalized value is the balanced average accuracy of the group.
    """
    vert = partial_auc(curve, bounds.x1, bounds.x2)
    horiz = partial_auc_horizontal(curve, bounds.y1, bounds.y2)
    raw = 0.5 * vert.raw + 0.5 * horiz.raw
    axes = vert.degenerate_axes + horiz.degenerate_axes
    if vert.normalized is not None and horiz.normalized is not None:
        normalized: float | None = 0.5 * vert.normalized + 0.5 * horiz.normalized
    elif vert.normalized is not None:
        normalized = vert.normalized
    else:
        normalized = horiz.normalized
    return AreaResult(raw, normalized, degenerate=bool(axes), degenerate_axes=axes)


def _rank_index(value: float, count: int, desc_scores: np.ndarray, axis: str) -> int:
    k = value * count
    rk = int(round(k))
    if abs(k - rk) > _ALIGN_TOL * max(1, count):
        raise AlignmentError(f"{axis} bound {value!r} is not a multiple of 1/{count}")
    if 0 < rk < count and desc_scores[rk - 1] == desc_scores[rk]:
        raise AlignmentError(
            f"{axis} bound {value!r} splits a block of tied scores; "
            f"it does not fall on a vertex of the empirical curve"
        )
    return rk


def partial_c_statistic(data: ScoreDataset, bounds: GroupBounds) -> float:
    """Normalized partial C statistic by direct pair counting.

    Averages, over the negatives whose FPR-rank interval lies in
    ``[x1, x2]``, the fraction of all positives ranked above them, and over
    the positives whose TPR-rank interval lies in ``[y1, y2]``, the fraction
    of all negatives ranked below them; ties earn half credit and the two
    means are averaged. Bounds must sit on vertices of the empirical curve
    (multiples of 1/N and 1/P that do not split tied scores).
    """
    data.require_both_classes()
    n_pos, n_neg = data.positive_count, data.negative_count
    pos = np.sort(data.positives)[::-1].copy()
    neg = np.sort(data.negatives)[::-1].copy()

    k1 = _rank_index(bounds.x1, n_neg, neg, "FPR")
    k2 = _rank_index(bounds.x2, n_neg, neg, "FPR")
    m1 = _rank_index(bounds.y1, n_pos, pos, "TPR")
    m2 = _rank_index(bounds.y2, n_pos, pos, "TPR")

    terms = []
    if k2 > k1:
        below, tied = kernels.item_counts(np.ascontiguousarray(neg[k1:k2]), pos)
        above = n_pos - below - tied
        terms.append(float(np.sum(above + 0.5 * tied)) / ((k2 - k1) * n_pos))
    if m2 > m1:
        below, tied = kernels.item_counts(np.ascontiguousarray(pos[m1:m2]), neg)
        terms.append(float(np.sum(below + 0.5 * tied)) / ((m2 - m1) * n_neg))
    if not terms:
        raise DegenerateError("both ranges of the group are empty")
    return sum(terms) / len(terms)


def balanced_accuracy_at_point(sens: float, spec: float) -> tuple[float, float]:
    """Balanced accuracy and Youden's J at one operating point."""
    for name, v in (("sensitivity", sens), ("specificity", spec)):
        if not 0.0 <= v <= 1.0:
            raise RangeError(f"{name}={v!r} outside [0, 1]")
    b = 0.5 * (sens + spec)
    return b, 2.0 * b - 1.0


def arc_segments(curve: RocCurve, bounds: GroupBounds | None = None) -> list[ArcSegment]:
    """Curve segments between the group's end points, clipped along the arc.

    Both coordinates are non-decreasing along the curve, so ``x + y`` is a
    monotone arc parameter; the group spans ``x1 + y1`` to ``x2 + y2``.
    """
    b = bounds or GroupBounds.full()
    fpr, tpr = curve.fpr, curve.tpr
    w = fpr + tpr
    w_lo, w_hi = b.x1 + b.y1, b.x2 + b.y2
    segments = []
    for i in range(len(w) - 1):
        a, c = w[i], w[i + 1]
        lo, hi = max(a, w_lo), min(c, w_hi)
        if hi <= lo or c <= a:
            continue
        t0, t1 = (lo - a) / (c - a), (hi - a) / (c - a)
        dx, dy = fpr[i + 1] - fpr[i], tpr[i + 1] - tpr[i]
        segments.append(
            ArcSegment(fpr[i] + t0 * dx, fpr[i] + t1 * dx, tpr[i] + t0 * dy, tpr[i] + t1 * dy)
        )
    return segments


def avg_balanced_accuracy_along_curve(curve: RocCurve, bounds: GroupBounds | None = None) -> float:
    """Average of point balanced accuracy along the curve, weighted by taxicab arc length.

    Generally differs from the AUC (and from the normalized concordant
    partial area); they coincide on the chance diagonal.
    """
    segments = arc_segments(curve, bounds)
    total = sum(s.weight for s in segments)
    if total <= 0:
        raise DegenerateError("curve portion has zero arc length")
    acc = 0.0
    for s in segments:
        x_mid = 0.5 * (s.x_lo + s.x_hi)
        y_mid = 0.5 * (s.y_lo + s.y_hi)
        acc += 0.5 * (y_mid + 1.0 - x_mid) * s.weight
    return acc / total
