"""Chance-corrected inter-annotator agreement."""

from __future__ import annotations

from collections import Counter

from clausefair.errors import EmptyInput
from clausefair.labels import Label


def cohen_kappa(pairs: list[tuple[Label, Label]]) -> float:
    """Cohen's kappa over paired labels from two raters.

    kappa = (p_o - p_e) / (1 - p_e), with p_e computed from each rater's
    marginal label frequencies. When p_e = 1 (both raters constant and
    equal, a 0/0 limit) the result is defined as 1.0.
    """
    if not pairs:
        raise EmptyInput("cohen_kappa needs at least one label pair")
    n = len(pairs)
    p_o = sum(1 for a, b in pairs if a == b) / n
    marg_a = Counter(a for a, _ in pairs)
    marg_b = Counter(b for _, b in pairs)
    p_e = sum((marg_a[k] / n) * (marg_b[k] / n) for k in marg_a)
    if p_e >= 1.0:
        return 1.0
    return (p_o - p_e) / (1.0 - p_e)
