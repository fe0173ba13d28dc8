"""Combinatorial sensitivity measures and pointwise structure."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import CapacityError
from .function import BooleanFunction, RealHypercubeFunction

BS_MAX_N = 16


@dataclass(frozen=True)
class SensitivityStats:
    max_sensitivity: int
    avg_sensitivity: Fraction
    block_sensitivity: int


def sensitivity_counts(f: BooleanFunction) -> np.ndarray:
    """Per-point sensitivity: number of coordinates whose flip changes f."""
    idx = np.arange(1 << f.n)
    counts = np.zeros(1 << f.n, dtype=np.int64)
    for i in range(f.n):
        counts += f.table != f.table[idx ^ (1 << i)]
    return counts


def sensitivity_stats(f: BooleanFunction, with_block: bool = True) -> SensitivityStats:
    """Max/average sensitivity, plus exact block sensitivity (branch-and-bound
    over minimal sensitive blocks; exponential, capped at n = 16)."""
    counts = sensitivity_counts(f)
    sens = int(counts.max())
    avg = Fraction(int(counts.sum()), 1 << f.n)
    if with_block:
        if f.n > BS_MAX_N:
            raise CapacityError(f"block sensitivity capped at n = {BS_MAX_N}")
        bs = int(kernels.block_sensitivity(f.table, f.n))
    else:
        bs = sens
    return SensitivityStats(sens, avg, bs)


def is_monotone(f: BooleanFunction) -> bool:
    """True iff f(x) <= f(y) whenever x <= y coordinatewise (-1 < +1).

    Index bit 1 means coordinate -1, so the edge check is f(at bit set) <=
    f(at bit clear) for every coordinate.
    """
    idx = np.arange(1 << f.n)
    for i in range(f.n):
        low = idx[(idx >> i) & 1 == 1]  # x_i = -1 side
        if np.any(f.table[low] > f.table[low ^ (1 << i)]):
            return False
    return True


def count_strict_local_minima(g: RealHypercubeFunction) -> int:
    """Points x with g(x) < g(x^i) for every coordinate i."""
    idx = np.arange(1 << g.n)
    strict = np.ones(1 << g.n, dtype=bool)
    for i in range(g.n):
        strict &= g.table < g.table[idx ^ (1 << i)]
    return int(strict.sum())


def junta_distance(f: BooleanFunction, k: int, budget: int = 1 << 28):
    """Distance to the nearest k-junta and a witness coordinate set.

    For each k-subset J the best J-junta is the plurality vote of f on each
    J-subcube (ties toward +1); the scan cost C(n,k) 2^n is checked against
    the node budget. Returns (Fraction distance, tuple witness).
    """
    from itertools import combinations
    from math import comb

    n = f.n
    if k > n:
        raise ValueError("k must be at most n")
    if comb(n, k) * (1 << n) > budget:
        raise CapacityError(
            f"junta scan needs {comb(n, k) * (1 << n)} nodes, budget {budget}"
        )
    if k == n:
        return Fraction(0), tuple(range(n))
    idx = np.arange(1 << n)
    neg = (f.table < 0).astype(np.int64)
    best = None
    best_set = None
    for J in combinations(range(n), k):
        key = np.zeros(1 << n, dtype=np.int64)
        for pos, i in enumerate(J):
            key |= ((idx >> i) & 1) << pos
        neg_counts = np.bincount(key, weights=neg, minlength=1 << k)
        tot_counts = np.bincount(key, minlength=1 << k)
        # plurality disagreement: min(#+1, #-1) per subcube (tie -> +1 side)
        disagree = int(np.minimum(neg_counts, tot_counts - neg_counts).sum())
        if best is None or disagree < best:
            best = disagree
            best_set = J
    return Fraction(best, 1 << n), best_set
