# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror ``deeproc._pykernels`` exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def pairwise_counts(const double[::1] pos, const double[::1] neg):
    """Exhaustive count of (positive, negative) pairs with pos > neg and pos == neg."""
    cdef Py_ssize_t i, j
    cdef Py_ssize_t n_pos = pos.shape[0], n_neg = neg.shape[0]
    cdef long long greater = 0, tied = 0
    cdef double p
    with nogil:
        for i in range(n_pos):
            p = pos[i]
            # branch-free so the inner loop vectorizes
            for j in range(n_neg):
                greater += p > neg[j]
                tied += p == neg[j]
    return int(greater), int(tied)


def item_counts(const double[::1] items, const double[::1] ref):
    """For each item, the number of reference values strictly below it and equal to it."""
    cdef Py_ssize_t i, j
    cdef Py_ssize_t n = items.shape[0], m = ref.shape[0]
    below = np.zeros(n, dtype=np.int64)
    tied = np.zeros(n, dtype=np.int64)
    cdef long long[::1] below_v = below
    cdef long long[::1] tied_v = tied
    cdef long long b, t
    cdef double v
    with nogil:
        for i in range(n):
            v = items[i]
            b = 0
            t = 0
            for j in range(m):
                b += ref[j] < v
                t += ref[j] == v
            below_v[i] = b
            tied_v[i] = t
    return below, tied


def collapse_ties(const double[::1] scores, const cnp.int8_t[::1] labels):
    """Cumulative (tp, fp) at the end of each run of equal scores.

    ``scores`` must be sorted in descending order with ``labels`` aligned.
    Returns (thresholds, tp, fp) with one entry per distinct score.
    """
    cdef Py_ssize_t n = scores.shape[0], i, k = 0
    thresholds = np.empty(n, dtype=np.float64)
    tp = np.empty(n, dtype=np.int64)
    fp = np.empty(n, dtype=np.int64)
    cdef double[::1] th_v = thresholds
    cdef long long[::1] tp_v = tp
    cdef long long[::1] fp_v = fp
    cdef long long ctp = 0, cfp = 0
    with nogil:
        for i in range(n):
            if labels[i]:
                ctp += 1
            else:
                cfp += 1
            if i == n - 1 or scores[i + 1] != scores[i]:
                th_v[k] = scores[i]
                tp_v[k] = ctp
                fp_v[k] = cfp
                k += 1
    return thresholds[:k].copy(), tp[:k].copy(), fp[:k].copy()
