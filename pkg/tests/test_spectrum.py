import math
from fractions import Fraction

import numpy as np
import pytest

from boolfun import (
    BooleanFunction,
    RealHypercubeFunction,
    and_f,
    dictator,
    fourier_stats,
    inverse_wht,
    is_monotone,
    majority,
    multilinear_eval,
    parity,
    spectral_concentration,
    wht,
)
from boolfun.sensitivity import sensitivity_counts


def brute_coeff(f, S):
    """Direct 2^n summation oracle for a single coefficient."""
    return sum(f(x) * (-1) ** bin(x & S).count("1") for x in range(1 << f.n))


def test_wht_matches_bruteforce_oracle():
    rng = np.random.default_rng(3)
    for n in (1, 2, 3, 4):
        for _ in range(10):
            f = BooleanFunction(n, rng.choice([-1, 1], size=1 << n).astype(np.int8))
            spec = wht(f)
            for S in range(1 << n):
                assert int(spec.coeffs[S]) == brute_coeff(f, S)


def test_parity_single_coefficient():
    spec = wht(parity(5))
    assert spec.fhat(0b11111) == 1
    assert np.count_nonzero(spec.coeffs) == 1


def test_dictator_spectrum():
    spec = wht(dictator(4, 0))
    assert spec.fhat(0b0001) == 1
    assert np.count_nonzero(spec.coeffs) == 1


def test_maj3_spectrum():
    # frozen from the brute-force oracle: fhat({i}) = 1/2, fhat([3]) = -1/2
    spec = wht(majority(3))
    for i in range(3):
        assert spec.fhat(1 << i) == Fraction(1, 2)
    assert spec.fhat(0b111) == Fraction(-1, 2)


def test_round_trip_and_parseval():
    rng = np.random.default_rng(7)
    for n in range(1, 9):
        for _ in range(50):
            f = BooleanFunction(n, rng.choice([-1, 1], size=1 << n).astype(np.int8))
            spec = wht(f)
            assert spec.parseval_mass() == 1 << (2 * n)
            assert inverse_wht(spec) == f


def test_real_round_trip():
    rng = np.random.default_rng(8)
    g = RealHypercubeFunction(4, rng.normal(size=16))
    back = inverse_wht(wht(g))
    assert np.allclose(back.table, g.table, atol=1e-12)


def test_fourier_stats_examples():
    st = fourier_stats(parity(4))
    assert st.total_influence == 4
    assert st.spectral_entropy == 0
    assert st.degree == 4
    assert st.variance == 1

    st = fourier_stats(majority(3))
    assert st.total_influence == 1.5
    assert st.spectral_entropy == 2.0
    assert st.w1 == 0.75
    assert st.linear_sum == 1.5
    assert st.degree == 3
    assert st.mean == 0.0
    assert st.max_coeff_sq == 0.25

    # the two-variable one-minority-point function fixed in the conventions
    st = fourier_stats(and_f(2))
    assert st.total_influence == 1.0
    assert st.spectral_entropy == 2.0


def test_influences_and_edge_count_agree():
    rng = np.random.default_rng(9)
    for n in (2, 3, 5):
        for _ in range(20):
            f = BooleanFunction(n, rng.choice([-1, 1], size=1 << n).astype(np.int8))
            st = fourier_stats(f)
            counts = sensitivity_counts(f)
            assert st.total_influence == pytest.approx(
                counts.sum() / (1 << n), abs=1e-12
            )


def test_monotone_linear_coefficient_identity():
    # classical: fhat({i}) = Inf_i for monotone f; checked by enumeration
    rng = np.random.default_rng(10)
    found = 0
    for n in (2, 3, 4):
        for _ in range(300):
            f = BooleanFunction(n, rng.choice([-1, 1], size=1 << n).astype(np.int8))
            if not is_monotone(f):
                continue
            found += 1
            spec = wht(f)
            st = fourier_stats(f)
            for i in range(n):
                assert float(spec.fhat(1 << i)) == pytest.approx(
                    st.influences[i], abs=1e-12
                )
    assert found > 10


def test_degree_exactness():
    assert fourier_stats(and_f(5)).degree == 5
    assert fourier_stats(dictator(5, 3)).degree == 1
    assert fourier_stats(BooleanFunction(3, np.ones(8, dtype=np.int8))).degree == 0


def test_spectral_concentration():
    size, fam = spectral_concentration(parity(6), 0.3)
    assert size == 1 and fam == [0b111111]
    size, _ = spectral_concentration(majority(3), 0.25)
    assert size == 3
    size, _ = spectral_concentration(majority(3), 0.5)
    assert size == 2
    # mass property: family >= 1-eps, removing last drops below
    rng = np.random.default_rng(12)
    for _ in range(20):
        f = BooleanFunction(4, rng.choice([-1, 1], size=16).astype(np.int8))
        eps = float(rng.uniform(0.05, 0.5))
        size, fam = spectral_concentration(f, eps)
        spec = wht(f)
        mass = sum(Fraction(int(spec.coeffs[S])) ** 2 for S in fam) / 4**4
        assert mass >= 1 - Fraction(eps)
        if size > 0:
            mass_short = mass - Fraction(int(spec.coeffs[fam[-1]])) ** 2 / 4**4
            assert mass_short < 1 - Fraction(eps)


def test_multilinear_eval():
    maj = majority(3)
    for x in range(8):
        pt = [1 - 2 * ((x >> i) & 1) for i in range(3)]
        assert multilinear_eval(maj, pt) == maj(x)
    assert multilinear_eval(maj, [0, 0, 0]) == 0
    assert multilinear_eval(maj, [1, 1, 0]) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        multilinear_eval(maj, [1, 1])
