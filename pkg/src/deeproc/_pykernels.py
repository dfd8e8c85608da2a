"""Pure numpy implementations of the hot kernels (fallback for ``_ckernels``)."""

from __future__ import annotations

import numpy as np

# Caps the temporary comparison matrix at ~4M cells.
_BLOCK_CELLS = 1 << 22


def _row_block(n_cols: int) -> int:
    return max(1, _BLOCK_CELLS // max(1, n_cols))


def pairwise_counts(pos: np.ndarray, neg: np.ndarray) -> tuple[int, int]:
    greater = 0
    tied = 0
    step = _row_block(neg.shape[0])
    for start in range(0, pos.shape[0], step):
        block = pos[start:start + step, None]
        greater += int(np.count_nonzero(block > neg[None, :]))
        tied += int(np.count_nonzero(block == neg[None, :]))
    return greater, tied


def item_counts(items: np.ndarray, ref: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    below = np.empty(items.shape[0], dtype=np.int64)
    tied = np.empty(items.shape[0], dtype=np.int64)
    step = _row_block(ref.shape[0])
    for start in range(0, items.shape[0], step):
        block = items[start:start + step, None]
        below[start:start + step] = np.count_nonzero(ref[None, :] < block, axis=1)
        tied[start:start + step] = np.count_nonzero(ref[None, :] == block, axis=1)
    return below, tied


def collapse_ties(scores: np.ndarray, labels: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    labels = labels.astype(bool)
    tp = np.cumsum(labels, dtype=np.int64)
    fp = np.cumsum(~labels, dtype=np.int64)
    last = np.flatnonzero(np.append(scores[1:] != scores[:-1], True))
    return scores[last].copy(), tp[last], fp[last]
