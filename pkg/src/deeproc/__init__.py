"""Deep ROC analysis of binary classifiers.

Group-wise partial areas under the ROC curve (average sensitivity, average
specificity and their balance, the normalized concordant partial AUC), point
and group-averaged post-test measures, bootstrap intervals, and report/plot
output.
"""

from ._backend import BACKEND
from ._version import __version__
from .errors import (
    AlignmentError,
    BoundsError,
    DeepRocError,
    DegenerateError,
    EmptyFileError,
    IoError,
    LabelError,
    NonFiniteScoreError,
    PairingError,
    ParameterError,
    ParseError,
    PrevalenceError,
    RangeError,
    SingleClassError,
    SpecError,
)
from .groups import Axis, GroupSpec, analyze, analyze_groups, check_group_sizes, resolve_groups
from .partial_areas import (
    AreaResult,
    ArcSegment,
    GroupBounds,
    auc,
    avg_balanced_accuracy_along_curve,
    balanced_accuracy_at_point,
    concordant_partial_auc,
    partial_auc,
    partial_auc_horizontal,
    partial_c_statistic,
)
from .post_test import (
    PointMeasures,
    auprc,
    avg_likelihood_ratios,
    avg_predictive_value,
    confusion_at_threshold,
)
from .report import AnalysisReport, GroupMeasures, IntervalEstimate
from .report_io import emit_roc_plot, parse_report, read_score_pair, read_scores, render_report
from .resampling import BootstrapConfig, bootstrap_ci, paired_delta_ci
from .roc_core import (
    RocCurve,
    RocPoint,
    ScoreDataset,
    build_curve,
    c_statistic,
    c_statistic_ranked,
    fpr_at_tpr,
    tpr_at_fpr,
)
from .synth import binormal_auc, binormal_scores

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
