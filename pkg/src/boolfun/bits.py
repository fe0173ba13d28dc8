"""Small bit-twiddling helpers used across modules."""

import numpy as np


def popcount(x: int) -> int:
    return bin(x).count("1")


def popcount_array(a):
    """Elementwise popcount of a nonnegative integer array."""
    return np.bitwise_count(a.astype(np.uint64)).astype(np.int64)


def popcounts_upto(size: int):
    """popcount of 0..size-1 as an int64 array."""
    return popcount_array(np.arange(size, dtype=np.int64))


def iter_bits(mask: int):
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def masks_of_weight_at_most(n: int, k: int):
    """All subset masks of [n] with popcount <= k, sorted ascending."""
    pc = popcounts_upto(1 << n)
    return [int(m) for m in np.nonzero(pc <= k)[0]]
