"""Binormal synthetic scores with a closed-form AUC."""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError
from .roc_core import ScoreDataset


def binormal_auc(mu: float, sigma: float) -> float:
    """AUC of N(mu, sigma) positives against N(0, 1) negatives: Phi(mu / sqrt(1 + sigma^2))."""
    z = mu / math.sqrt(1.0 + sigma * sigma)
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))


def binormal_scores(n_pos: int, n_neg: int, mu: float, sigma: float, seed: int = 0) -> ScoreDataset:
    """Draw ``n_pos`` positives from N(mu, sigma) and ``n_neg`` negatives from N(0, 1).

    Uses numpy's PCG64 generator seeded with ``seed``; positives come first.
    """
    if n_pos < 1 or n_neg < 1:
        raise ParameterError(f"class sizes must be positive, got n_pos={n_pos}, n_neg={n_neg}")
    if not sigma > 0:
        raise ParameterError(f"sigma must be > 0, got {sigma}")
    if not mu >= 0:
        raise ParameterError(f"mu must be >= 0, got {mu}")
    rng = np.random.Generator(np.random.PCG64(seed))
    pos = rng.normal(mu, sigma, size=n_pos)
    neg = rng.normal(0.0, 1.0, size=n_neg)
    labels = np.concatenate([np.ones(n_pos, bool), np.zeros(n_neg, bool)])
    return ScoreDataset(labels, np.concatenate([pos, neg]))
