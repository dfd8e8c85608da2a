"""Time the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 1000 4000] [--repeat 5]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from deeproc import _backend


def _cases(n: int, rng: np.random.Generator) -> dict[str, tuple]:
    pos = np.round(rng.normal(1.0, 1.0, n), 2)
    neg = np.round(rng.normal(0.0, 1.0, n), 2)
    scores = np.concatenate([pos, neg])
    labels = np.concatenate([np.ones(n, np.int8), np.zeros(n, np.int8)])
    order = np.argsort(-scores, kind="stable")
    return {
        "pairwise_counts": (pos, neg),
        "item_counts": (pos[: n // 10], neg),
        "collapse_ties": (np.ascontiguousarray(scores[order]), np.ascontiguousarray(labels[order])),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[1000, 4000])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = {"python": _backend.get_kernels("python")}
    try:
        backends["compiled"] = _backend.get_kernels("compiled")
    except ImportError:
        print("compiled kernels unavailable; timing the fallback only")

    rng = np.random.default_rng(0)
    print(f"{'kernel':16} {'n':>7} " + " ".join(f"{b:>12}" for b in backends) + "  speedup")
    for n in args.sizes:
        for name, inputs in _cases(n, rng).items():
            times = {}
            for label, mod in backends.items():
                fn = getattr(mod, name)
                times[label] = min(timeit.repeat(lambda: fn(*inputs), number=1, repeat=args.repeat))
            cells = " ".join(f"{times[b] * 1e3:10.2f}ms" for b in backends)
            speedup = f"{times['python'] / times['compiled']:7.1f}x" if "compiled" in times else ""
            print(f"{name:16} {n:7d} {cells}  {speedup}")


if __name__ == "__main__":
    main()
