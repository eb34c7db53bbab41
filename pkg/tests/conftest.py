"""Shared helpers for the test suite."""

import numpy as np


def sample_separated_zeros(rng, count, min_sep=0.05, max_mod=0.75):
    """Draw `count` points in the disc of radius max_mod, pairwise at least
    min_sep apart, by rejection."""
    zeros = []
    while len(zeros) < count:
        a = complex(rng.uniform(-max_mod, max_mod), rng.uniform(-max_mod, max_mod))
        if abs(a) > max_mod:
            continue
        if all(abs(a - b) >= min_sep for b in zeros):
            zeros.append(a)
    return zeros


def richardson_slopes(errors):
    """log2 ratios of successive error magnitudes for steps halving each
    time; clean O(h^2) convergence gives slopes near 2."""
    out = []
    for e0, e1 in zip(errors[:-1], errors[1:]):
        out.append(np.log2(e0 / e1))
    return out
