from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deeproc import (
    AlignmentError,
    BoundsError,
    DegenerateError,
    GroupBounds,
    RangeError,
    ScoreDataset,
    auc,
    avg_balanced_accuracy_along_curve,
    balanced_accuracy_at_point,
    build_curve,
    concordant_partial_auc,
    partial_auc,
    partial_auc_horizontal,
    partial_c_statistic,
)
from deeproc.partial_areas import arc_segments

from conftest import FIXTURE_POINTS, random_dataset


def exact_points(data):
    """Curve vertices as Fractions, enumerated threshold by threshold."""
    pos = [F(s) for s in data.positives]
    neg = [F(s) for s in data.negatives]
    pts = [(F(0), F(0))]
    for t in sorted(set(pos) | set(neg), reverse=True):
        pts.append((F(sum(n >= t for n in neg), len(neg)), F(sum(p >= t for p in pos), len(pos))))
    return pts


def vertical_area(pts, a, b):
    """Exact integral of the piecewise-linear curve over x in [a, b]; risers add nothing."""
    total = F(0)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        lo, hi = max(x0, a), min(x1, b)
        if x1 == x0 or hi <= lo:
            continue
        ya = y0 + (lo - x0) * (y1 - y0) / (x1 - x0)
        yb = y0 + (hi - x0) * (y1 - y0) / (x1 - x0)
        total += (hi - lo) * (ya + yb) / 2
    return total


def horizontal_area(pts, a, b):
    """Exact integral of 1 - x over y in [a, b]."""
    flipped = [(y, 1 - x) for x, y in pts]
    return vertical_area(flipped, a, b)


def brute_partial_c(data, k1, k2, m1, m2):
    """Pair-count the partial C statistic over rank ranges [k1, k2) and [m1, m2)."""
    pos = sorted(data.positives, reverse=True)
    neg = sorted(data.negatives, reverse=True)

    def credit(p, n):
        return 1.0 if p > n else 0.5 if p == n else 0.0

    terms = []
    if k2 > k1:
        terms.append(sum(credit(p, n) for n in neg[k1:k2] for p in pos) / ((k2 - k1) * len(pos)))
    if m2 > m1:
        terms.append(sum(credit(p, n) for p in pos[m1:m2] for n in neg) / ((m2 - m1) * len(neg)))
    return sum(terms) / len(terms)


class TestFixtureAreas:
    def test_oracle_matches_hand_enumeration(self, fixture_data):
        assert exact_points(fixture_data) == [(F(x), F(y)) for x, y in FIXTURE_POINTS]

    def test_auc(self, fixture_curve):
        assert auc(fixture_curve) == pytest.approx(8 / 9, abs=1e-15)

    def test_pauc_first_third(self, fixture_curve):
        r = partial_auc(fixture_curve, 0, 1 / 3)
        assert r.raw == pytest.approx(2 / 9, abs=1e-15)
        assert r.normalized == pytest.approx(2 / 3, abs=1e-15)

    def test_paucx_full(self, fixture_curve):
        r = partial_auc_horizontal(fixture_curve, 0, 1)
        assert r.normalized == pytest.approx(8 / 9, abs=1e-15)

    def test_cpauc_first_group(self, fixture_curve):
        r = concordant_partial_auc(fixture_curve, GroupBounds(0, 1 / 3, 0, 1))
        assert r.raw == pytest.approx(5 / 9, abs=1e-15)
        assert r.normalized == pytest.approx(7 / 9, abs=1e-15)
        assert not r.degenerate

    def test_cpauc_flat_group_falls_back(self, fixture_curve):
        r = concordant_partial_auc(fixture_curve, GroupBounds(1 / 3, 2 / 3, 1, 1))
        assert r.raw == pytest.approx(1 / 6, abs=1e-15)
        assert r.normalized == pytest.approx(1.0, abs=1e-15)
        assert r.degenerate_axes == ("y",)

    def test_partial_c_matches_cpauc(self, fixture_data):
        assert partial_c_statistic(fixture_data, GroupBounds(0, 1 / 3, 0, 1)) == pytest.approx(7 / 9, abs=1e-15)

    def test_arc_average(self, fixture_curve):
        assert avg_balanced_accuracy_along_curve(fixture_curve) == pytest.approx(25 / 36, abs=1e-12)


class TestAgainstExactOracle:
    @pytest.mark.parametrize("seed", range(20))
    def test_random_ranges(self, seed):
        rng = np.random.default_rng(seed)
        data = random_dataset(rng, n=int(rng.integers(10, 60)))
        curve = build_curve(data)
        pts = exact_points(data)
        for _ in range(5):
            a, b = sorted(rng.uniform(0, 1, 2))
            got = partial_auc(curve, a, b).raw
            assert got == pytest.approx(float(vertical_area(pts, F(a), F(b))), abs=1e-12)
            got = partial_auc_horizontal(curve, a, b).raw
            assert got == pytest.approx(float(horizontal_area(pts, F(a), F(b))), abs=1e-12)

    @pytest.mark.parametrize("seed", range(15))
    def test_partial_c_brute_force(self, seed):
        rng = np.random.default_rng(100 + seed)
        data = random_dataset(rng, n=int(rng.integers(10, 80)))
        curve = build_curve(data)
        n_pos, n_neg = data.positive_count, data.negative_count
        i, j = sorted(rng.choice(len(curve), 2, replace=False))
        k1, k2 = int(curve.fp[i]), int(curve.fp[j])
        m1, m2 = int(curve.tp[i]), int(curve.tp[j])
        bounds = GroupBounds(k1 / n_neg, k2 / n_neg, m1 / n_pos, m2 / n_pos)
        if k1 == k2 and m1 == m2:
            with pytest.raises(DegenerateError):
                partial_c_statistic(data, bounds)
            return
        expected = brute_partial_c(data, k1, k2, m1, m2)
        assert partial_c_statistic(data, bounds) == pytest.approx(expected, abs=1e-12)
        assert concordant_partial_auc(curve, bounds).normalized == pytest.approx(expected, abs=1e-12)


class TestProperties:
    @given(st.integers(0, 2**32 - 1), st.integers(2, 6))
    @settings(max_examples=80, deadline=None)
    def test_additivity(self, seed, k):
        rng = np.random.default_rng(seed)
        curve = build_curve(random_dataset(rng, n=int(rng.integers(5, 80))))
        cuts = np.concatenate([[0.0], np.sort(rng.uniform(0, 1, k - 1)), [1.0]])
        total = sum(partial_auc(curve, a, b).raw for a, b in zip(cuts, cuts[1:]))
        assert total == pytest.approx(auc(curve), abs=1e-12)
        total = sum(partial_auc_horizontal(curve, a, b).raw for a, b in zip(cuts, cuts[1:]))
        assert total == pytest.approx(auc(curve), abs=1e-12)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=60, deadline=None)
    def test_full_range_normalizations_equal_auc(self, seed):
        curve = build_curve(random_dataset(np.random.default_rng(seed), n=40))
        a = auc(curve)
        assert partial_auc(curve, 0, 1).normalized == pytest.approx(a, abs=1e-12)
        assert partial_auc_horizontal(curve, 0, 1).normalized == pytest.approx(a, abs=1e-12)
        assert concordant_partial_auc(curve, GroupBounds.full()).normalized == pytest.approx(a, abs=1e-12)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_normalized_values_in_unit_interval(self, seed):
        rng = np.random.default_rng(seed)
        curve = build_curve(random_dataset(rng, n=30))
        a, b = sorted(rng.uniform(0, 1, 2))
        if a < b:
            assert 0 <= partial_auc(curve, a, b).normalized <= 1 + 1e-12
            assert 0 <= partial_auc_horizontal(curve, a, b).normalized <= 1 + 1e-12


class TestErrors:
    def test_reversed_range(self, fixture_curve):
        with pytest.raises(BoundsError):
            partial_auc(fixture_curve, 0.6, 0.2)

    def test_out_of_range(self, fixture_curve):
        with pytest.raises(BoundsError):
            partial_auc_horizontal(fixture_curve, -0.1, 0.5)

    def test_group_bounds_validation(self):
        with pytest.raises(BoundsError):
            GroupBounds(0, 1.2, 0, 1)
        with pytest.raises(BoundsError):
            GroupBounds(0, 1, 0.8, 0.2)

    def test_zero_width_is_degenerate(self, fixture_curve):
        r = partial_auc(fixture_curve, 0.5, 0.5)
        assert r.raw == 0.0 and r.normalized is None and r.degenerate

    def test_misaligned_bound(self, fixture_data):
        with pytest.raises(AlignmentError):
            partial_c_statistic(fixture_data, GroupBounds(0, 0.25, 0, 1))

    def test_bound_inside_tie_block(self):
        data = ScoreDataset.from_classes([0.9, 0.1], [0.5, 0.5])
        with pytest.raises(AlignmentError):
            partial_c_statistic(data, GroupBounds(0, 0.5, 0, 1))

    def test_balanced_accuracy_range(self):
        assert balanced_accuracy_at_point(0.8, 0.6) == pytest.approx((0.7, 0.4))
        with pytest.raises(RangeError):
            balanced_accuracy_at_point(1.2, 0.5)


class TestArcAverage:
    def test_diagonal(self, diagonal_curve):
        assert avg_balanced_accuracy_along_curve(diagonal_curve) == pytest.approx(0.5, abs=1e-15)
        assert auc(diagonal_curve) == pytest.approx(0.5, abs=1e-15)

    def test_perfect(self, perfect_curve):
        assert avg_balanced_accuracy_along_curve(perfect_curve) == pytest.approx(0.75)

    def test_segments_cover_group(self, fixture_curve):
        segs = arc_segments(fixture_curve, GroupBounds(0, 1 / 3, 0, 1))
        assert sum(s.weight for s in segs) == pytest.approx(4 / 3)

    def test_zero_length(self, fixture_curve):
        with pytest.raises(DegenerateError):
            avg_balanced_accuracy_along_curve(fixture_curve, GroupBounds(0.5, 0.5, 1, 1))
