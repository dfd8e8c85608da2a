"""Bootstrap confidence intervals for report measures.

Replicate ``r`` draws from its own PCG64 stream seeded with
``SeedSequence([seed, r])``, so results do not depend on execution order or
on how many workers run the replicates. Groups are re-resolved on every
replicate's curve.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .errors import DegenerateError, PairingError, SingleClassError
from .groups import (
    PAIRWISE_C_LIMIT,
    GroupSpec,
    _group_counts,
    _measure_bounds,
    group_measures,
    resolve_groups,
)
from .partial_areas import GroupBounds, auc
from .post_test import auprc, confusion_at_threshold
from .report import IntervalEstimate, parse_selector
from .roc_core import ScoreDataset, build_curve, c_statistic, c_statistic_ranked


@dataclass(frozen=True)
class BootstrapConfig:
    replicates: int = 1000
    confidence_level: float = 0.95
    seed: int = 0
    stratified: bool = True
    n_jobs: int = 1
    analysis: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if not 0.0 < self.confidence_level < 1.0:
            raise ValueError("confidence_level must lie in (0, 1)")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, replicate])))


def resample_indices(labels: np.ndarray, rng: np.random.Generator, stratified: bool = True) -> np.ndarray:
    """Indices of one bootstrap sample; stratified samples keep both class counts."""
    n = labels.shape[0]
    if not stratified:
        return rng.integers(0, n, size=n)
    pos = np.flatnonzero(labels)
    neg = np.flatnonzero(~labels)
    return np.concatenate([
        pos[rng.integers(0, pos.size, size=pos.size)],
        neg[rng.integers(0, neg.size, size=neg.size)],
    ])


def evaluate_measure(data: ScoreDataset, spec: GroupSpec, selector: str, **options: Any) -> float | None:
    """Compute a single report measure without building the whole report.

    ``options`` are the keyword options of :func:`deeproc.groups.analyze_groups`.
    Returns ``None`` when the measure is undefined for ``data``.
    """
    scope, idx, name = parse_selector(selector)
    try:
        data.require_both_classes()
    except SingleClassError:
        return None
    threshold = options.get("threshold", 0.5)
    if scope == "point":
        return getattr(confusion_at_threshold(data, threshold), name)
    if scope == "global" and name == "c_statistic":
        if data.positive_count * data.negative_count <= PAIRWISE_C_LIMIT:
            return c_statistic(data)
        return c_statistic_ranked(data)
    curve = build_curve(data)
    if scope == "global":
        return auc(curve) if name == "auc" else auprc(curve)
    opts = {k: options[k] for k in ("prevalence", "resolution", "lr_cap") if k in options}
    if scope == "whole":
        counts = (data.positive_count, data.negative_count)
        return getattr(group_measures(curve, GroupBounds.full(), counts=counts, **opts), name)
    if idx > spec.n_groups:
        raise KeyError(f"selector {selector!r}: spec has {spec.n_groups} groups")
    groups = resolve_groups(curve, data, spec)
    bounds = _measure_bounds(groups, spec, options.get("y_ranges", "derived"))[idx - 1]
    counts = _group_counts(curve, data, spec)[idx - 1]
    return getattr(group_measures(curve, bounds, counts=counts, **opts), name)


def _run(fn: Callable[[int], float | None], config: BootstrapConfig) -> list[float | None]:
    reps = range(config.replicates)
    if config.n_jobs > 1:
        with ThreadPoolExecutor(max_workers=config.n_jobs) as pool:
            return list(pool.map(fn, reps))
    return [fn(r) for r in reps]


def _interval(point: float | None, values: list[float | None], config: BootstrapConfig) -> IntervalEstimate:
    good = np.array([v for v in values if v is not None and np.isfinite(v)], dtype=np.float64)
    degenerate = len(values) - good.size
    if good.size == 0:
        raise DegenerateError(f"all {len(values)} bootstrap replicates were degenerate")
    alpha = 1.0 - config.confidence_level
    lower, upper = np.quantile(good, [alpha / 2.0, 1.0 - alpha / 2.0])
    return IntervalEstimate(
        point=point,
        lower=float(lower),
        upper=float(upper),
        replicates_used=int(good.size),
        degenerate_replicates=int(degenerate),
        level=config.confidence_level,
    )


def bootstrap_ci(
    data: ScoreDataset,
    spec: GroupSpec,
    selector: str,
    config: BootstrapConfig = BootstrapConfig(),
) -> IntervalEstimate:
    """Percentile bootstrap interval for one measure of ``data``.

    Replicates where the measure is undefined are counted and excluded.
    """
    data.require_both_classes()
    opts = config.analysis
    point = evaluate_measure(data, spec, selector, **opts)

    def one(r: int) -> float | None:
        idx = resample_indices(data.labels, replicate_rng(config.seed, r), config.stratified)
        return evaluate_measure(data.subset(idx), spec, selector, **opts)

    return _interval(point, _run(one, config), config)


def _delta(a: float | None, b: float | None) -> float | None:
    if a is None or b is None:
        return None
    d = a - b
    return d if np.isfinite(d) else None


def paired_delta_ci(
    data_a: ScoreDataset,
    data_b: ScoreDataset,
    spec: GroupSpec,
    selector: str,
    config: BootstrapConfig = BootstrapConfig(),
) -> IntervalEstimate:
    """Percentile interval for ``measure(A) - measure(B)`` on jointly resampled instances.

    Both datasets must score the same instances in the same order.
    """
    if len(data_a) != len(data_b):
        raise PairingError(f"paired datasets differ in length: {len(data_a)} vs {len(data_b)}")
    if not np.array_equal(data_a.labels, data_b.labels):
        first = int(np.flatnonzero(data_a.labels != data_b.labels)[0])
        raise PairingError(f"paired datasets disagree on the label of instance {first}")
    data_a.require_both_classes()
    opts = config.analysis
    point = _delta(evaluate_measure(data_a, spec, selector, **opts), evaluate_measure(data_b, spec, selector, **opts))

    def one(r: int) -> float | None:
        idx = resample_indices(data_a.labels, replicate_rng(config.seed, r), config.stratified)
        return _delta(
            evaluate_measure(data_a.subset(idx), spec, selector, **opts),
            evaluate_measure(data_b.subset(idx), spec, selector, **opts),
        )

    return _interval(point, _run(one, config), config)
