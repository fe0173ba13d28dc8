import math
from fractions import Fraction

import numpy as np
import pytest

from boolfun import (
    BooleanFunction,
    CapacityError,
    DomainError,
    PreconditionError,
    RealHypercubeFunction,
    and_f,
    convolution_tail,
    dictator,
    erasure_norm,
    majority,
    nicd_agreement,
    noise_operator,
    noise_profile,
    parity,
    stability,
    tail_mass,
)


def stability_pair_oracle(f, rho: Fraction) -> Fraction:
    """Exhaustive E[f(x)f(y)] over all pairs with exact flip probabilities."""
    n = f.n
    total = Fraction(0)
    p_eq = (1 + rho) / 2
    p_ne = (1 - rho) / 2
    for x in range(1 << n):
        for y in range(1 << n):
            diff = bin(x ^ y).count("1")
            prob = p_eq ** (n - diff) * p_ne**diff
            total += f(x) * f(y) * prob
    return total / (1 << n)


def test_stability_matches_pair_enumeration():
    rng = np.random.default_rng(21)
    for n in (2, 3, 4):
        for _ in range(5):
            f = BooleanFunction(n, rng.choice([-1, 1], size=1 << n).astype(np.int8))
            for rho in (Fraction(1, 3), Fraction(-1, 2), Fraction(7, 10)):
                oracle = stability_pair_oracle(f, rho)
                assert stability(f, float(rho)) == pytest.approx(
                    float(oracle), abs=1e-12
                )


def test_noise_profile_examples():
    for rho in (0.2, 0.5, 0.9):
        r, stab, ns = noise_profile(dictator(4, 1), [rho])[0]
        assert stab == pytest.approx(rho, abs=1e-15)
        assert ns == pytest.approx((1 - rho) / 2, abs=1e-15)
    r, stab, _ = noise_profile(majority(3), [0.5])[0]
    assert stab == pytest.approx(0.75 * 0.5 + 0.25 * 0.125, abs=1e-15)
    r, stab, _ = noise_profile(parity(5), [0.5])[0]
    assert stab == pytest.approx(0.5**5, abs=1e-15)
    with pytest.raises(DomainError):
        noise_profile(majority(3), [1.5])


def test_noise_operator_on_constants():
    one = RealHypercubeFunction(3, np.ones(8))
    for rho in (0.0, 0.5, 1.0):
        assert np.allclose(noise_operator(one, rho).table, 1.0)
    assert tail_mass(one, 1.0) == 1.0
    assert tail_mass(one, 1.0 + 1e-9) == 0.0


def test_noise_operator_rho_zero_flattens():
    rng = np.random.default_rng(4)
    g = RealHypercubeFunction(4, rng.normal(size=16) ** 2)
    g = RealHypercubeFunction(4, g.table / g.table.mean())
    flat = noise_operator(g, 1e-300)
    assert np.allclose(flat.table, 1.0, atol=1e-12)


def test_convolution_tail_point_mass():
    # f = 2^n at the all-ones index, E[f] = 1; tail computed exactly
    n = 3
    table = np.zeros(8)
    table[7] = 8.0
    f = RealHypercubeFunction(n, table)
    rho = 0.5
    g = noise_operator(f, rho)
    # direct oracle: T_rho f(x) = sum_y f(y) prod_i ((1+rho)/2 or (1-rho)/2)
    for x in range(8):
        diff = bin(x ^ 7).count("1")
        expect = 8.0 * ((1 + rho) / 2) ** (3 - diff) * ((1 - rho) / 2) ** diff
        assert g(x) == pytest.approx(expect, abs=1e-12)
    t = 1.0
    assert convolution_tail(f, rho, t) == tail_mass(g, t)


def test_convolution_tail_preconditions():
    bad = RealHypercubeFunction(2, np.array([-0.5, 1.5, 1.0, 2.0]))
    with pytest.raises(PreconditionError):
        convolution_tail(bad, 0.5, 1.0)
    not_mean_one = RealHypercubeFunction(2, np.ones(4) * 1.5)
    with pytest.raises(PreconditionError):
        convolution_tail(not_mean_one, 0.5, 1.0)
    ok = RealHypercubeFunction(2, np.ones(4))
    with pytest.raises(DomainError):
        convolution_tail(ok, 1.5, 1.0)


def test_nicd_dictator_closed_form():
    for r in (2, 3, 10):
        for eps in (0.1, 0.26, 0.4):
            got = nicd_agreement(dictator(3, 0), r, eps)
            assert got == pytest.approx((1 - eps) ** r + eps**r, abs=1e-12)


def test_nicd_noiseless_limit():
    assert nicd_agreement(majority(3), 4, 1e-9) == pytest.approx(1.0, abs=1e-6)


def test_nicd_two_player_stability_identity():
    rng = np.random.default_rng(13)
    for n in (2, 4, 6, 8):
        f = BooleanFunction(n, rng.choice([-1, 1], size=1 << n).astype(np.int8))
        for eps in (0.1, 0.26):
            lhs = nicd_agreement(f, 2, eps)
            rhs = 0.5 + 0.5 * stability(f, (1 - 2 * eps) ** 2)
            assert lhs == pytest.approx(rhs, abs=1e-12)
    with pytest.raises(DomainError):
        nicd_agreement(majority(3), 2, 0.6)


def test_erasure_closed_forms():
    for p in (0.25, 0.5, 0.9):
        assert erasure_norm(dictator(3, 1), p) == pytest.approx(p, abs=1e-12)
        assert erasure_norm(parity(2), p) == pytest.approx(p * p, abs=1e-12)
    rng = np.random.default_rng(14)
    for _ in range(10):
        f = BooleanFunction(3, rng.choice([-1, 1], size=8).astype(np.int8))
        assert erasure_norm(f, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_erasure_brute_oracle():
    """3^n literal enumeration oracle vs the recursion."""
    from boolfun import multilinear_eval
    from itertools import product

    rng = np.random.default_rng(15)
    f = BooleanFunction(3, rng.choice([-1, 1], size=8).astype(np.int8))
    p = 0.37
    total = 0.0
    for z in product((-1, 0, 1), repeat=3):
        w = 1.0
        for zi in z:
            w *= (p / 2) if zi else (1 - p)
        total += w * abs(multilinear_eval(f, list(z)))
    assert erasure_norm(f, p) == pytest.approx(total, abs=1e-12)


def test_erasure_capacity():
    with pytest.raises(CapacityError):
        erasure_norm(parity(15), 0.5)
