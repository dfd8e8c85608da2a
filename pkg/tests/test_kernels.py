"""Compiled and pure-Python kernels must agree exactly."""

import importlib
import os
import subprocess
import sys

import numpy as np
import pytest

from deeproc import _backend, _pykernels

try:
    from deeproc import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def _scores(rng, n, ties):
    s = rng.normal(size=n)
    return np.round(s * 2) / 2 if ties else s


@needs_ext
@pytest.mark.parametrize("ties", [False, True])
@pytest.mark.parametrize("seed", range(5))
def test_pairwise_counts_agree(seed, ties):
    rng = np.random.default_rng(seed)
    pos, neg = _scores(rng, 137, ties), _scores(rng, 211, ties)
    assert _ckernels.pairwise_counts(pos, neg) == _pykernels.pairwise_counts(pos, neg)


@needs_ext
@pytest.mark.parametrize("ties", [False, True])
def test_item_counts_agree(ties):
    rng = np.random.default_rng(7)
    items, ref = _scores(rng, 90, ties), _scores(rng, 300, ties)
    cb, ct = _ckernels.item_counts(items, ref)
    pb, pt = _pykernels.item_counts(items, ref)
    np.testing.assert_array_equal(cb, pb)
    np.testing.assert_array_equal(ct, pt)


@needs_ext
@pytest.mark.parametrize("ties", [False, True])
def test_collapse_ties_agree(ties):
    rng = np.random.default_rng(3)
    s = np.sort(_scores(rng, 500, ties))[::-1].copy()
    lab = rng.integers(0, 2, 500).astype(np.int8)
    for a, b in zip(_ckernels.collapse_ties(s, lab), _pykernels.collapse_ties(s, lab)):
        np.testing.assert_array_equal(a, b)


def test_pairwise_counts_small_by_hand():
    pos = np.array([0.9, 0.8, 0.4])
    neg = np.array([0.7, 0.3, 0.2])
    assert _pykernels.pairwise_counts(pos, neg) == (8, 0)
    assert _pykernels.pairwise_counts(np.array([0.5]), np.array([0.5])) == (0, 1)


def test_python_blocks_cover_all_rows(monkeypatch):
    monkeypatch.setattr(_pykernels, "_BLOCK_CELLS", 7)
    rng = np.random.default_rng(0)
    pos, neg = rng.normal(size=23), rng.normal(size=5)
    expected = sum(int(p > n) for p in pos for n in neg)
    assert _pykernels.pairwise_counts(pos, neg)[0] == expected
    below, _ = _pykernels.item_counts(pos, neg)
    assert below.tolist() == [sum(int(n < p) for n in neg) for p in pos]


def test_get_kernels():
    assert _backend.get_kernels("python") is _pykernels
    assert _backend.get_kernels() is _backend.kernels
    with pytest.raises(ValueError):
        _backend.get_kernels("fortran")


def test_env_var_forces_fallback():
    code = "import deeproc; print(deeproc.BACKEND)"
    env = dict(os.environ, DEEPROC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
