"""Command-line interface: ``deeproc analyze | compare | synth``.

Exit status: 0 on success; 2 when ``--strict`` is set and the analysis
produced warnings; otherwise the ``exit_status`` of the raised error. Errors
are reported on stderr as a single line ``error[<Code>]: <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from ._version import __version__
from .errors import DeepRocError, PairingError, SpecError
from .groups import GroupSpec, analyze_groups, resolve_groups
from .report_io import (
    emit_roc_plot,
    read_score_pair,
    read_scores,
    render_report,
    write_scores,
)
from .resampling import BootstrapConfig, bootstrap_ci, evaluate_measure, paired_delta_ci
from .roc_core import build_curve
from .synth import binormal_auc, binormal_scores

FORMATS = {"text": "text", "csv": "delimited", "json": "structured"}


def _prevalence(text: str) -> float | None:
    if text == "auto":
        return None
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"prevalence must be 'auto' or a number, got {text!r}") from None


def _boundaries(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"boundaries must be comma-separated numbers, got {text!r}") from None


def _add_group_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--groups", type=int, default=3, help="number of equal-width groups (default 3)")
    p.add_argument("--boundaries", type=_boundaries, help="explicit boundaries, e.g. 0,0.2,0.5,1")
    p.add_argument("--axis", choices=("fpr", "tpr", "score"), default="fpr")
    p.add_argument("--y-ranges", choices=("derived", "independent"), default="derived",
                   help="range for the cross-axis partial area of each group")
    p.add_argument("--min-group-size", type=int, default=25)
    p.add_argument("--preferred-group-size", type=int, default=50)
    p.add_argument("--prevalence", type=_prevalence, default=None, metavar="{auto|P}")
    p.add_argument("--threshold", type=float, default=0.5, help="operating point for point measures")
    p.add_argument("--bootstrap", type=int, default=0, metavar="N", help="bootstrap replicates (0 = off)")
    p.add_argument("--level", type=float, default=0.95, help="confidence level")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker threads for bootstrap replicates")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--positive-label")
    p.add_argument("--negative-label")
    p.add_argument("--out", type=Path, help="report path (default stdout)")
    p.add_argument("--format", choices=tuple(FORMATS), default="text")
    p.add_argument("--precision", type=int, default=2, help="decimals in text output")
    p.add_argument("--strict", action="store_true", help="exit 2 when the analysis emits warnings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deeproc", description="Deep ROC analysis of binary classifiers.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="group-wise measure table for one classifier")
    a.add_argument("-i", "--input", type=Path, required=True)
    a.add_argument("--svg", type=Path, help="write an ROC plot with shaded groups")
    a.add_argument("--measure", action="append", default=None,
                   help="measure selector to bootstrap (repeatable; default: auc and every group's "
                        "bal_avg_accuracy)")
    _add_group_options(a)

    c = sub.add_parser("compare", help="paired comparison of two classifiers on the same instances")
    c.add_argument("-i", "--input", type=Path, action="append", required=True,
                   help="two score files, or one file with label,score_a,score_b")
    _add_group_options(c)
    c.set_defaults(bootstrap=1000)

    s = sub.add_parser("synth", help="write binormal synthetic scores")
    s.add_argument("--n-pos", type=int, required=True)
    s.add_argument("--n-neg", type=int, required=True)
    s.add_argument("--mu", type=float, required=True, help="positive-class mean (negatives are N(0,1))")
    s.add_argument("--sigma", type=float, default=1.0, help="positive-class standard deviation")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", type=Path, required=True)
    return parser


def _spec(args: argparse.Namespace) -> GroupSpec:
    sizes = dict(min_group_size=args.min_group_size, preferred_group_size=args.preferred_group_size)
    if args.boundaries is not None:
        return GroupSpec(axis=args.axis, boundaries=args.boundaries, **sizes)
    return GroupSpec.equal(args.groups, axis=args.axis, **sizes)


def _analysis_options(args: argparse.Namespace) -> dict:
    return dict(prevalence=args.prevalence, threshold=args.threshold, y_ranges=args.y_ranges)


def _bootstrap_config(args: argparse.Namespace) -> BootstrapConfig:
    return BootstrapConfig(
        replicates=args.bootstrap,
        confidence_level=args.level,
        seed=args.seed,
        n_jobs=args.jobs,
        analysis=_analysis_options(args),
    )


def _emit(payload: bytes, out: Path | None) -> None:
    if out is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    else:
        out.write_bytes(payload)


def _prevalence_notice(args: argparse.Namespace) -> None:
    if args.prevalence is not None:
        print(
            f"notice: predictive values use prevalence {args.prevalence:g} instead of the sample's",
            file=sys.stderr,
        )


def run_analyze(args: argparse.Namespace) -> int:
    spec = _spec(args)
    data = read_scores(args.input, args.delimiter, args.positive_label, args.negative_label)
    data.require_both_classes()
    _prevalence_notice(args)
    curve = build_curve(data)
    report = analyze_groups(curve, data, spec, **_analysis_options(args))
    if args.bootstrap > 0:
        selectors = args.measure or ["auc"] + [f"group{i}.bal_avg_accuracy" for i in range(1, spec.n_groups + 1)]
        config = _bootstrap_config(args)
        report = report.with_intervals({s: bootstrap_ci(data, spec, s, config) for s in selectors})
    _emit(render_report(report, FORMATS[args.format], precision=args.precision), args.out)
    if args.svg is not None:
        emit_roc_plot(curve, resolve_groups(curve, data, spec), args.svg)
    has_warnings = any(w.startswith("warning") for w in report.warnings)
    return 2 if args.strict and has_warnings else 0


def _compare_selectors(n_groups: int) -> list[str]:
    out = ["auc"]
    for i in range(1, n_groups + 1):
        out += [f"group{i}.bal_avg_accuracy", f"group{i}.avg_sensitivity", f"group{i}.avg_specificity"]
    return out


def run_compare(args: argparse.Namespace) -> int:
    spec = _spec(args)
    read = dict(delimiter=args.delimiter, positive_label=args.positive_label, negative_label=args.negative_label)
    if len(args.input) == 1:
        data_a, data_b = read_score_pair(args.input[0], **read)
    elif len(args.input) == 2:
        data_a, data_b = read_scores(args.input[0], **read), read_scores(args.input[1], **read)
    else:
        raise PairingError(f"compare takes one paired file or two files, got {len(args.input)}")
    if len(data_a) != len(data_b):
        raise PairingError(f"paired inputs differ in length: {len(data_a)} vs {len(data_b)}")
    if not np.array_equal(data_a.labels, data_b.labels):
        raise PairingError("paired inputs disagree on labels")
    data_a.require_both_classes()
    _prevalence_notice(args)
    opts = _analysis_options(args)
    rows = []
    for sel in _compare_selectors(spec.n_groups):
        a = evaluate_measure(data_a, spec, sel, **opts)
        b = evaluate_measure(data_b, spec, sel, **opts)
        row = {"measure": sel, "a": a, "b": b, "delta": None if a is None or b is None else a - b,
               "lower": None, "upper": None, "significant": False}
        if args.bootstrap > 0:
            ci = paired_delta_ci(data_a, data_b, spec, sel, _bootstrap_config(args))
            row.update(lower=ci.lower, upper=ci.upper, significant=ci.lower > 0 or ci.upper < 0)
        rows.append(row)
    _emit(_render_comparison(rows, args), args.out)
    return 0


def _render_comparison(rows: list[dict], args: argparse.Namespace) -> bytes:
    if args.format == "json":
        doc = {"tool_version": __version__, "level": args.level, "replicates": args.bootstrap,
               "seed": args.seed, "comparisons": rows}
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    p = args.precision

    def f(v):
        return "-" if v is None else f"{v:.{p}f}"

    if args.format == "csv":
        lines = ["measure,a,b,delta,lower,upper,significant"]
        for r in rows:
            vals = ["" if r[k] is None else repr(r[k]) for k in ("a", "b", "delta", "lower", "upper")]
            lines.append(",".join([r["measure"], *vals, str(r["significant"]).lower()]))
        return ("\n".join(lines) + "\n").encode("utf-8")
    width = max(len(r["measure"]) for r in rows)
    lines = [f"{'measure'.ljust(width)}  A      B      delta  {args.level * 100:g}% CI"]
    for r in rows:
        ci = "" if r["lower"] is None else f"[{f(r['lower'])}, {f(r['upper'])}]"
        mark = "  *" if r["significant"] else ""
        lines.append(f"{r['measure'].ljust(width)}  {f(r['a']):5}  {f(r['b']):5}  {f(r['delta']):5}  {ci}{mark}")
    if any(r["significant"] for r in rows):
        lines.append("* interval excludes 0")
    return ("\n".join(lines) + "\n").encode("utf-8")


def run_synth(args: argparse.Namespace) -> int:
    data = binormal_scores(args.n_pos, args.n_neg, args.mu, args.sigma, args.seed)
    write_scores(args.out, data)
    print(f"theoretical AUC {binormal_auc(args.mu, args.sigma):.6f}", file=sys.stderr)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"analyze": run_analyze, "compare": run_compare, "synth": run_synth}
    try:
        return handlers[args.command](args)
    except DeepRocError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_status
    except (ValueError, KeyError) as exc:
        err = SpecError(str(exc))
        print(f"error[{err.code}]: {exc}", file=sys.stderr)
        return err.exit_status


if __name__ == "__main__":
    sys.exit(main())
