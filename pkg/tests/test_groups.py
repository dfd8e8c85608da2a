import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deeproc import (
    Axis,
    GroupBounds,
    GroupSpec,
    ScoreDataset,
    SingleClassError,
    SpecError,
    analyze,
    analyze_groups,
    auc,
    build_curve,
    check_group_sizes,
    resolve_groups,
)
from deeproc.groups import _group_counts, count_in_groups

from conftest import random_dataset


def as_tuples(groups):
    return [(g.x1, g.x2, g.y1, g.y2) for g in groups]


class TestGroupSpec:
    def test_equal(self):
        spec = GroupSpec.equal(4, axis="tpr")
        assert spec.boundaries == (0.0, 0.25, 0.5, 0.75, 1.0)
        assert spec.axis is Axis.TPR
        assert spec.n_groups == 4

    @pytest.mark.parametrize(
        "kwargs",
        [dict(boundaries=(0.0,)), dict(boundaries=(0.1, 1.0)), dict(boundaries=(0.0, 0.9)),
         dict(boundaries=(0.0, 0.5, 0.5, 1.0)), dict(boundaries=(0.0, 0.6, 0.4, 1.0)),
         dict(axis="ppv"), dict(min_group_size=0)],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(SpecError):
            GroupSpec(**kwargs)

    def test_zero_groups(self):
        with pytest.raises(SpecError):
            GroupSpec.equal(0)


class TestResolveGroups:
    def test_fpr_thirds(self, fixture_curve, fixture_data):
        groups = resolve_groups(fixture_curve, fixture_data, GroupSpec.equal(3))
        assert as_tuples(groups) == pytest.approx([(0, 1 / 3, 0, 1), (1 / 3, 2 / 3, 1, 1), (2 / 3, 1, 1, 1)])
        assert [(g.threshold_hi, g.threshold_lo) for g in groups] == [
            (np.inf, 0.4), (0.4, 0.3), (0.3, -np.inf)]

    def test_tpr_thirds(self, fixture_curve, fixture_data):
        groups = resolve_groups(fixture_curve, fixture_data, GroupSpec.equal(3, axis="tpr"))
        assert as_tuples(groups) == pytest.approx(
            [(0, 0, 0, 1 / 3), (0, 0, 1 / 3, 2 / 3), (0, 1, 2 / 3, 1)])

    def test_score_median(self, fixture_curve, fixture_data):
        spec = GroupSpec(axis="score", boundaries=(0, 0.5, 1))
        groups = resolve_groups(fixture_curve, fixture_data, spec)
        assert as_tuples(groups) == pytest.approx([(0, 1 / 3, 0, 2 / 3), (1 / 3, 1, 2 / 3, 1)])
        assert count_in_groups(groups, fixture_data) == [3, 3]

    def test_counts(self, fixture_curve, fixture_data):
        assert _group_counts(fixture_curve, fixture_data, GroupSpec.equal(3)) == [(3, 1), (0, 1), (0, 1)]

    def test_single_class(self):
        data = ScoreDataset([1, 1], [0.2, 0.3])
        with pytest.raises(SingleClassError):
            analyze(data)

    @given(st.integers(0, 2**32 - 1), st.sampled_from(["fpr", "tpr", "score"]), st.integers(1, 6))
    @settings(max_examples=80, deadline=None)
    def test_partition_properties(self, seed, axis, k):
        rng = np.random.default_rng(seed)
        data = random_dataset(rng, n=int(rng.integers(20, 150)))
        curve = build_curve(data)
        spec = GroupSpec.equal(k, axis=axis)
        groups = resolve_groups(curve, data, spec)
        assert (groups[0].x1, groups[0].y1) == (0, 0)
        assert (groups[-1].x2, groups[-1].y2) == (1, 1)
        for g, h in zip(groups, groups[1:]):
            assert (g.x2, g.y2, g.threshold_lo) == (h.x1, h.y1, h.threshold_hi)
        counts = _group_counts(curve, data, spec)
        assert sum(p for p, _ in counts) == data.positive_count
        assert sum(n for _, n in counts) == data.negative_count
        assert [p + n for p, n in counts] == count_in_groups(groups, data)
        report = analyze_groups(curve, data, spec)
        assert sum(m.cpauc_raw for m in report.groups) == pytest.approx(auc(curve), abs=1e-12)


class TestSizeChecks:
    def test_warning_and_info(self, fixture_curve, fixture_data):
        spec = GroupSpec.equal(3, min_group_size=2, preferred_group_size=5)
        notices = check_group_sizes(resolve_groups(fixture_curve, fixture_data, spec), fixture_data, spec)
        assert [(n.level, n.group, n.count) for n in notices] == [
            ("info", 1, 4), ("warning", 2, 1), ("warning", 3, 1)]

    def test_quiet_when_large(self):
        data = random_dataset(np.random.default_rng(0), n=600, prevalence=0.5, ties=False)
        curve = build_curve(data)
        spec = GroupSpec.equal(2, axis="score")
        assert check_group_sizes(resolve_groups(curve, data, spec), data, spec) == []


class TestAnalyze:
    def test_fixture_table(self, fixture_curve, fixture_data):
        r = analyze_groups(fixture_curve, fixture_data, GroupSpec.equal(3))
        assert r.get("auc") == pytest.approx(8 / 9)
        assert r.get("c_statistic") == pytest.approx(8 / 9)
        assert r.get("auprc") == pytest.approx(11 / 12)
        assert r.get("whole.bal_avg_accuracy") == pytest.approx(8 / 9)
        assert [m.bal_avg_accuracy for m in r.groups] == pytest.approx([7 / 9, 1, 1])
        assert [m.avg_sensitivity for m in r.groups] == pytest.approx([2 / 3, 1, 1])
        assert r.groups[0].avg_specificity == pytest.approx(8 / 9)
        assert r.groups[1].avg_specificity is None
        assert [m.cpauc_raw for m in r.groups] == pytest.approx([5 / 9, 1 / 6, 1 / 6])
        assert r.groups[1].degeneracy_flags == ("degenerate_y",)
        assert [m.instance_count for m in r.groups] == [4, 1, 1]
        assert all(m.size_warning for m in r.groups)
        assert sum(w.startswith("warning") for w in r.warnings) == 3
        assert r.get("point.dor") == 4.0

    def test_independent_ranges(self, fixture_curve, fixture_data):
        r = analyze_groups(fixture_curve, fixture_data, GroupSpec.equal(3), y_ranges="independent")
        assert [(m.bounds.y1, m.bounds.y2) for m in r.groups] == pytest.approx([(0, 1 / 3), (1 / 3, 2 / 3), (2 / 3, 1)])
        assert r.groups[0].avg_specificity == pytest.approx(1.0)
        assert r.config["y_ranges"] == "independent"

    def test_independent_ranges_need_rate_axis(self, fixture_curve, fixture_data):
        with pytest.raises(SpecError):
            analyze_groups(fixture_curve, fixture_data, GroupSpec(axis="score"), y_ranges="independent")

    def test_bad_y_ranges(self, fixture_curve, fixture_data):
        with pytest.raises(SpecError):
            analyze_groups(fixture_curve, fixture_data, GroupSpec(), y_ranges="sideways")

    def test_explicit_prevalence_recorded(self, fixture_data):
        r = analyze(fixture_data, prevalence=0.1)
        assert r.config["prevalence"] == 0.1
        assert r.config["prevalence_source"] == "explicit"

    def test_score_axis_warns_on_non_probabilities(self):
        data = ScoreDataset.from_classes([3.0, 2.0], [-1.0, 0.5])
        r = analyze(data, GroupSpec(axis="score"))
        assert any("not probabilities" in w for w in r.warnings)

    def test_group_bounds_are_reported(self, fixture_data):
        r = analyze(fixture_data, GroupSpec.equal(3))
        assert isinstance(r.groups[0].bounds, GroupBounds)
        assert r.config["boundaries"] == (0.0, 1 / 3, 2 / 3, 1.0)

    def test_bad_selector(self, fixture_data):
        r = analyze(fixture_data, GroupSpec.equal(3))
        with pytest.raises(KeyError):
            r.get("group4.avg_ppv")
        with pytest.raises(KeyError):
            r.get("group1.nonsense")
