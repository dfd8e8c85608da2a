"""Empirical ROC curves, interpolation along them, and the C statistic.

Decision rule throughout the package: an instance is predicted positive when
``score >= threshold``. Tied scores therefore enter the curve together and
produce a single (possibly diagonal) segment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ._backend import kernels
from .errors import NonFiniteScoreError, SingleClassError


def _readonly(a: NDArray) -> NDArray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ScoreDataset:
    """Labeled classification scores for one cohort.

    Parameters
    ----------
    labels : array of bool
        ``True`` for positives. Row order is preserved (needed for pairing).
    scores : array of float
        Finite real scores; larger means higher predicted risk.
    """

    labels: NDArray[np.bool_]
    scores: NDArray[np.float64]

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels)
        if labels.dtype != np.bool_:
            labels = labels.astype(np.int64)
            if np.any((labels != 0) & (labels != 1)):
                raise ValueError("labels must be binary (0/1 or bool)")
            labels = labels.astype(bool)
        scores = np.asarray(self.scores, dtype=np.float64)
        if labels.ndim != 1 or scores.ndim != 1 or labels.shape != scores.shape:
            raise ValueError(
                f"labels and scores must be 1-D arrays of equal length, "
                f"got {labels.shape} and {scores.shape}"
            )
        if not np.all(np.isfinite(scores)):
            bad = int(np.flatnonzero(~np.isfinite(scores))[0])
            raise NonFiniteScoreError(f"score at index {bad} is not finite ({scores[bad]!r})")
        object.__setattr__(self, "labels", _readonly(labels.copy()))
        object.__setattr__(self, "scores", _readonly(scores.copy()))

    @classmethod
    def from_classes(cls, positives: Iterable[float], negatives: Iterable[float]) -> "ScoreDataset":
        """Build a dataset from separate positive and negative score lists (positives first)."""
        pos = np.asarray(list(positives), dtype=np.float64)
        neg = np.asarray(list(negatives), dtype=np.float64)
        labels = np.concatenate([np.ones(pos.size, bool), np.zeros(neg.size, bool)])
        return cls(labels, np.concatenate([pos, neg]))

    def __len__(self) -> int:
        return int(self.scores.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScoreDataset):
            return NotImplemented
        return np.array_equal(self.labels, other.labels) and np.array_equal(self.scores, other.scores)

    @property
    def positive_count(self) -> int:
        return int(np.count_nonzero(self.labels))

    @property
    def negative_count(self) -> int:
        return len(self) - self.positive_count

    @property
    def positives(self) -> NDArray[np.float64]:
        return np.ascontiguousarray(self.scores[self.labels])

    @property
    def negatives(self) -> NDArray[np.float64]:
        return np.ascontiguousarray(self.scores[~self.labels])

    @property
    def prevalence(self) -> float:
        return self.positive_count / len(self) if len(self) else float("nan")

    def require_both_classes(self) -> None:
        if self.positive_count == 0 or self.negative_count == 0:
            raise SingleClassError(
                f"analysis needs both classes; got {self.positive_count} positives "
                f"and {self.negative_count} negatives"
            )

    def subset(self, index: ArrayLike) -> "ScoreDataset":
        index = np.asarray(index)
        return ScoreDataset(self.labels[index], self.scores[index])


class RocPoint(NamedTuple):
    fpr: float
    tpr: float
    threshold: float


@dataclass(frozen=True, eq=False)
class RocCurve:
    """Empirical ROC curve as an ordered piecewise-linear point sequence.

    ``tp`` and ``fp`` hold the exact cumulative counts at each point, so
    ``tpr == tp / positive_count`` and ``fpr == fp / negative_count``.
    ``thresholds[0]`` is ``+inf`` (the origin) and ``thresholds[-1]`` is
    ``-inf`` (the point (1, 1)).
    """

    fpr: NDArray[np.float64]
    tpr: NDArray[np.float64]
    thresholds: NDArray[np.float64]
    tp: NDArray[np.int64]
    fp: NDArray[np.int64]
    positive_count: int
    negative_count: int
    _cum_area: NDArray[np.float64] = field(init=False, repr=False)
    _cum_area_h: NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        dx = np.diff(self.fpr)
        dy = np.diff(self.tpr)
        vert = np.concatenate([[0.0], np.cumsum(dx * (self.tpr[1:] + self.tpr[:-1]) * 0.5)])
        horiz = np.concatenate([[0.0], np.cumsum(dy * (1.0 - (self.fpr[1:] + self.fpr[:-1]) * 0.5))])
        object.__setattr__(self, "_cum_area", _readonly(vert))
        object.__setattr__(self, "_cum_area_h", _readonly(horiz))

    @property
    def prevalence(self) -> float:
        return self.positive_count / (self.positive_count + self.negative_count)

    @property
    def points(self) -> list[RocPoint]:
        return [RocPoint(float(x), float(y), float(t)) for x, y, t in zip(self.fpr, self.tpr, self.thresholds)]

    def __len__(self) -> int:
        return int(self.fpr.shape[0])


def build_curve(data: ScoreDataset) -> RocCurve:
    """Construct the empirical ROC curve of ``data``.

    One point is emitted per distinct score (plus the origin); ties between
    classes yield a diagonal segment.

    Raises
    ------
    SingleClassError
        If either class is empty.
    """
    data.require_both_classes()
    scores = data.scores
    if not np.all(np.isfinite(scores)):
        raise NonFiniteScoreError("scores must be finite")
    order = np.argsort(-scores, kind="stable")
    sorted_scores = np.ascontiguousarray(scores[order])
    sorted_labels = np.ascontiguousarray(data.labels[order].astype(np.int8))
    thresholds, tp, fp = kernels.collapse_ties(sorted_scores, sorted_labels)

    n_pos, n_neg = data.positive_count, data.negative_count
    tp = np.concatenate([[0], np.asarray(tp, dtype=np.int64)])
    fp = np.concatenate([[0], np.asarray(fp, dtype=np.int64)])
    thresholds = np.concatenate([[np.inf], np.asarray(thresholds, dtype=np.float64)])
    thresholds[-1] = -np.inf
    return RocCurve(
        fpr=_readonly(fp / n_neg),
        tpr=_readonly(tp / n_pos),
        thresholds=_readonly(thresholds),
        tp=_readonly(tp),
        fp=_readonly(fp),
        positive_count=n_pos,
        negative_count=n_neg,
    )


def _scalar_or_array(values: NDArray, like: ArrayLike) -> float | NDArray:
    return float(values) if np.ndim(like) == 0 else values


def tpr_at_fpr(curve: RocCurve, x: ArrayLike) -> float | NDArray:
    """Sensitivity at false positive rate ``x`` by linear interpolation.

    On a vertical riser the top of the riser is returned.
    """
    xs = np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)
    fpr, tpr = curve.fpr, curve.tpr
    j = np.searchsorted(fpr, xs, side="right") - 1
    j = np.clip(j, 0, len(fpr) - 1)
    nxt = np.minimum(j + 1, len(fpr) - 1)
    width = fpr[nxt] - fpr[j]
    on_vertex = (fpr[j] == xs) | (width <= 0)
    t = np.where(on_vertex, 0.0, (xs - fpr[j]) / np.where(width > 0, width, 1.0))
    y = np.where(on_vertex, tpr[j], tpr[j] + t * (tpr[nxt] - tpr[j]))
    return _scalar_or_array(y, x)


def fpr_at_tpr(curve: RocCurve, y: ArrayLike) -> float | NDArray:
    """False positive rate at sensitivity ``y`` by linear interpolation.

    On a horizontal run the left end of the run is returned.
    """
    ys = np.clip(np.asarray(y, dtype=np.float64), 0.0, 1.0)
    fpr, tpr = curve.fpr, curve.tpr
    j = np.searchsorted(tpr, ys, side="left")
    j = np.clip(j, 0, len(tpr) - 1)
    prv = np.maximum(j - 1, 0)
    height = tpr[j] - tpr[prv]
    on_vertex = (tpr[j] == ys) | (height <= 0)
    t = np.where(on_vertex, 0.0, (ys - tpr[prv]) / np.where(height > 0, height, 1.0))
    x = np.where(on_vertex, fpr[j], fpr[prv] + t * (fpr[j] - fpr[prv]))
    return _scalar_or_array(x, y)


def c_statistic(data: ScoreDataset) -> float:
    """C statistic by exhaustive comparison of every (positive, negative) pair.

    Ties earn half credit. This is O(P*N) and intended as the brute-force
    reference for the trapezoidal AUC; see :func:`c_statistic_ranked` for
    large inputs.
    """
    data.require_both_classes()
    greater, tied = kernels.pairwise_counts(data.positives, data.negatives)
    return (greater + 0.5 * tied) / (data.positive_count * data.negative_count)


def _midranks(values: NDArray[np.float64]) -> NDArray[np.float64]:
    order = np.argsort(values, kind="mergesort")
    sorted_vals = values[order]
    starts = np.flatnonzero(np.concatenate([[True], sorted_vals[1:] != sorted_vals[:-1]]))
    ends = np.concatenate([starts[1:], [len(values)]])
    avg = (starts + ends + 1) * 0.5
    ranks = np.empty(len(values), dtype=np.float64)
    ranks[order] = np.repeat(avg, ends - starts)
    return ranks


def c_statistic_ranked(data: ScoreDataset) -> float:
    """C statistic through the Mann-Whitney U statistic on mid-ranks, O(n log n)."""
    data.require_both_classes()
    ranks = _midranks(data.scores)
    n_pos, n_neg = data.positive_count, data.negative_count
    u = ranks[data.labels].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))
