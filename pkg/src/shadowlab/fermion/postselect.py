"""Particle-number post-selection of measurement outcomes."""
from __future__ import annotations

import numpy as np


def post_select(histogram: dict[str, int], n_occ: int) -> tuple[dict[str, int], float]:
    """Keep bitstrings of Hamming weight n_occ; returns (kept, retention)."""
    total = sum(histogram.values())
    if total == 0:
        raise ValueError("empty histogram")
    kept = {b: c for b, c in histogram.items() if b.count("1") == n_occ}
    kept_total = sum(kept.values())
    if kept_total == 0:
        raise ValueError("all shots discarded by post-selection")
    return kept, kept_total / total


def post_select_bits(bits: np.ndarray, n_occ: int) -> tuple[np.ndarray, float]:
    """Array form: rows with sum == n_occ; raises when nothing survives."""
    mask = bits.sum(axis=1) == n_occ
    if not mask.any():
        raise ValueError("all shots discarded by post-selection")
    return bits[mask], float(mask.mean())
