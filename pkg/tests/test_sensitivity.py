from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from boolfun import (
    BooleanFunction,
    CapacityError,
    RealHypercubeFunction,
    and_f,
    count_strict_local_minima,
    dictator,
    is_monotone,
    junta_distance,
    majority,
    parity,
    sensitivity_stats,
)


def bs_bruteforce(f):
    """Independent oracle: maximum over x of the largest disjoint family of
    sensitive blocks, found by exhaustive recursion over all block families."""
    n = f.n
    best = 0

    def grow(x, avail_mask, count):
        nonlocal best
        best = max(best, count)
        sub = avail_mask
        # enumerate nonempty submasks of the available coordinates
        while sub:
            if f(x ^ sub) != f(x):
                grow(x, (avail_mask & ~sub), count + 1)
            sub = (sub - 1) & avail_mask

    for x in range(1 << n):
        grow(x, (1 << n) - 1, 0)
    return best


def test_standard_functions():
    st = sensitivity_stats(and_f(4))
    assert st.max_sensitivity == 4 and st.block_sensitivity == 4
    st = sensitivity_stats(parity(5))
    assert st.max_sensitivity == 5 and st.block_sensitivity == 5
    assert st.avg_sensitivity == Fraction(5)
    st = sensitivity_stats(majority(3))
    assert st.max_sensitivity == 2
    assert st.avg_sensitivity == Fraction(3, 2)


def test_block_sensitivity_against_bruteforce():
    rng = np.random.default_rng(31)
    for n in (2, 3):
        for _ in range(25):
            f = BooleanFunction(n, rng.choice([-1, 1], size=1 << n).astype(np.int8))
            st = sensitivity_stats(f)
            assert st.block_sensitivity == bs_bruteforce(f)
            assert st.block_sensitivity >= st.max_sensitivity
            assert st.avg_sensitivity <= st.max_sensitivity


def test_exhaustive_n3_gap():
    """Full 256-function scan: record the extremal bs - sens gap (computed,
    not assumed)."""
    gaps = []
    for v in range(256):
        f = BooleanFunction.from_table_int(3, v)
        st = sensitivity_stats(f)
        gaps.append(st.block_sensitivity - st.max_sensitivity)
    assert min(gaps) >= 0
    # frozen from the bs_bruteforce oracle over all 256 functions
    assert max(gaps) == 0


def test_capacity():
    with pytest.raises(CapacityError):
        sensitivity_stats(parity(17))


def test_monotone():
    assert is_monotone(and_f(3))
    assert is_monotone(majority(3))
    assert not is_monotone(parity(2))
    assert is_monotone(BooleanFunction(2, np.ones(4, dtype=np.int8)))


def test_local_minima():
    # g(x) = sum x_i: unique strict minimum at the all-(-1) point
    idx = np.arange(8)
    pc = np.array([bin(x).count("1") for x in range(8)])
    g = RealHypercubeFunction(3, (3 - 2 * pc).astype(float))
    assert count_strict_local_minima(g) == 1
    # g = -x1 x2 on two variables: both mixed points are strict minima
    g2 = RealHypercubeFunction(2, np.array([-1.0, 1.0, 1.0, -1.0]) * -1)
    assert count_strict_local_minima(g2) == 2
    assert count_strict_local_minima(RealHypercubeFunction(2, np.zeros(4))) == 0


def junta_distance_bruteforce(f, k):
    """Try every function of every k-subset (2^(2^k) candidates)."""
    n = f.n
    best = None
    for J in combinations(range(n), k):
        for val in range(1 << (1 << k)):
            err = 0
            for x in range(1 << n):
                key = 0
                for pos, i in enumerate(J):
                    key |= ((x >> i) & 1) << pos
                g = 1 - 2 * ((val >> key) & 1)
                err += g != f(x)
            best = err if best is None else min(best, err)
    return Fraction(best, 1 << n)


def test_junta_distance():
    d, J = junta_distance(dictator(3, 0), 1)
    assert d == 0 and J == (0,)
    d, _ = junta_distance(parity(4), 3)
    assert d == Fraction(1, 2)
    d, _ = junta_distance(majority(3), 1)
    assert d == Fraction(1, 4)
    rng = np.random.default_rng(32)
    for _ in range(5):
        f = BooleanFunction(3, rng.choice([-1, 1], size=8).astype(np.int8))
        for k in (1, 2):
            assert junta_distance(f, k)[0] == junta_distance_bruteforce(f, k)
        assert junta_distance(f, 3)[0] == 0


def test_junta_budget():
    with pytest.raises(CapacityError):
        junta_distance(parity(4), 2, budget=10)
