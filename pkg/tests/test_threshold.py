import math
from fractions import Fraction

import numpy as np
import pytest

from boolfun import (
    BooleanFunction,
    CapacityError,
    LtfSpec,
    PtfRep,
    TieError,
    and_f,
    approx_majority_min_degree,
    constant,
    dictator,
    enumerate_ltfs,
    fourier_stats,
    gl_extremal,
    intersect_halfspaces,
    ip,
    is_ltf,
    ltf,
    majority,
    parity,
    ptf_degree,
    ptf_sparsity,
    stability,
    threshold_tail,
)


def tail_bruteforce(a, theta, strict):
    """Direct 2^n enumeration with exact Fractions."""
    n = len(a)
    fa = [Fraction(v) for v in a]
    ft = Fraction(theta)
    count = 0
    for x in range(1 << n):
        s = sum(fa[i] * (1 - 2 * ((x >> i) & 1)) for i in range(n))
        if (abs(s) < ft) if strict else (abs(s) <= ft):
            count += 1
    return Fraction(count, 1 << n)


class TestThresholdTail:
    def test_sharp_cases(self):
        s = 1 / math.sqrt(2)
        assert threshold_tail((s, s), 1.0) == Fraction(1, 2)
        assert threshold_tail((0.5, 0.5, 0.5, 0.5), 1.0, strict=True) == Fraction(3, 8)

    def test_single_weight(self):
        assert threshold_tail((1.0, 0.0, 0.0), 1.0) == Fraction(1)

    def test_sum_bound(self):
        rng = np.random.default_rng(41)
        for _ in range(10):
            a = rng.normal(size=6)
            theta = sum(abs(Fraction(float(v))) for v in a)  # exact sum
            assert threshold_tail(tuple(a), theta) == Fraction(1)

    def test_against_bruteforce(self):
        rng = np.random.default_rng(42)
        for n in (1, 3, 5, 8):
            for strict in (False, True):
                a = tuple(rng.normal(size=n))
                theta = float(rng.uniform(0, n))
                assert threshold_tail(a, theta, strict) == tail_bruteforce(a, theta, strict)

    def test_rational_inputs(self):
        a = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
        assert threshold_tail(a, Fraction(1, 3)) == Fraction(6, 8)

    def test_negative_theta(self):
        assert threshold_tail((1.0,), -0.5) == Fraction(0)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            threshold_tail(tuple([0.1] * 31), 1.0)


class TestLtf:
    def test_majority_spec(self):
        assert ltf(LtfSpec((1, 1, 1), 0)) == majority(3)

    def test_tie_rejected(self):
        with pytest.raises(TieError):
            ltf(LtfSpec((1, 1), 0))
        with pytest.raises(TieError):
            ltf(LtfSpec((0.5, 0.5, 0.5), 0.5))

    def test_is_ltf(self):
        assert is_ltf(majority(3))
        assert is_ltf(dictator(4, 2))
        assert is_ltf(and_f(3))
        assert not is_ltf(parity(2))
        assert not is_ltf(ip(4))

    def test_random_specs_round_trip(self):
        rng = np.random.default_rng(43)
        done = 0
        for _ in range(60):
            w = tuple(float(v) for v in rng.normal(size=5))
            theta = float(rng.normal())
            try:
                f = ltf(LtfSpec(w, theta))
            except TieError:
                continue
            done += 1
            assert is_ltf(f)
        assert done >= 55

    def test_json_round_trip(self):
        spec = LtfSpec((1.0, -2.5, 0.0), 0.75)
        assert LtfSpec.from_json(spec.to_json()) == spec


class TestEnumeration:
    def test_counts_small(self):
        assert len(enumerate_ltfs(1)) == 4  # two dictators + two constants
        assert len(enumerate_ltfs(2)) == 14
        assert len(enumerate_ltfs(3)) == 104

    def test_lp_scan_vs_weight_method(self):
        for n in (2, 3):
            lp = {f.table_int() for f in enumerate_ltfs(n, method="lp")}
            wt = {f.table_int() for f in enumerate_ltfs(n, method="weights")}
            assert lp == wt

    def test_all_members_are_ltfs(self):
        fns = enumerate_ltfs(3)
        assert all(is_ltf(f, force_exact=True) for f in fns)

    def test_parities_excluded(self):
        hexes = {f.to_hex() for f in enumerate_ltfs(2)}
        assert parity(2).to_hex() not in hexes
        assert parity(2).negate().to_hex() not in hexes

    def test_degree_at_most_one(self):
        for f in enumerate_ltfs(2):
            assert ptf_degree(f) <= 1


class TestPtfDegree:
    def test_examples(self):
        assert ptf_degree(majority(3)) == 1
        assert ptf_degree(constant(2, 1)) == 0
        for n in range(1, 6):
            assert ptf_degree(parity(n), confirm="exact") == n

    def test_majorities(self):
        for n in (3, 5):
            assert ptf_degree(majority(n), confirm="exact") == 1


class TestPtfSparsity:
    def test_examples(self):
        assert ptf_sparsity(parity(4)) == 1
        assert ptf_sparsity(ip(2)) == 3
        assert ptf_sparsity(majority(3)) == 3

    def test_limit(self):
        assert ptf_sparsity(ip(2), limit=2) is None

    def test_witness_support_feasibility(self):
        # the {empty, {1}, {2}} support sign-represents ip(2): p = (1+x+y)/2
        rep = PtfRep(2, {0: 0.5, 1: 0.5, 2: 0.5})
        assert rep.sign_represents(ip(2))
        assert rep.sparsity == 3


class TestGlExtremal:
    def test_k1_is_majority(self):
        for n in (3, 5):
            f, rep = gl_extremal(n, 1)
            assert f == majority(n)
            assert rep.sign_represents(f)
            assert rep.degree == 1

    def test_k_equals_n(self):
        f, rep = gl_extremal(4, 4)
        assert f in (parity(4), parity(4).negate())
        assert rep.sign_represents(f)

    def test_total_influence_k1_n3(self):
        f, _ = gl_extremal(3, 1)
        assert fourier_stats(f).total_influence == 1.5

    def test_sign_representation_all_windows(self):
        for n in (2, 3, 4, 5):
            for k in range(1, n + 1):
                for tilt in ("positive", "negative"):
                    f, rep = gl_extremal(n, k, tilt)
                    assert rep.sign_represents(f)
                    assert rep.degree <= k

    def test_ptf_json(self):
        _, rep = gl_extremal(3, 2)
        back = PtfRep.from_json(rep.to_json())
        assert back.monomials == rep.monomials


class TestIntersect:
    def test_single(self):
        assert intersect_halfspaces([LtfSpec((1, 1, 1), 0)]) == majority(3)

    def test_opposing_constant_false(self):
        f = intersect_halfspaces([LtfSpec((1, 0), 0.5), LtfSpec((-1, 0), 0.5)])
        assert np.all(f.table == 1)  # FALSE is +1

    def test_union_bound_sanity(self):
        rng = np.random.default_rng(44)
        delta = 0.1
        rho = 1 - 2 * delta
        specs = []
        while len(specs) < 3:
            w = rng.integers(-5, 6, size=8)
            if not w.any():
                continue
            theta = int(rng.integers(-3, 4)) * 2 + (1 - int(w.sum()) % 2)
            try:
                specs.append(LtfSpec(tuple(int(v) for v in w), theta))
                ltf(specs[-1])
            except TieError:
                specs.pop()
        inter = intersect_halfspaces(specs)
        ns_inter = 0.5 - 0.5 * stability(inter, rho)
        ns_parts = [0.5 - 0.5 * stability(ltf(s), rho) for s in specs]
        assert ns_inter <= sum(ns_parts) + 1e-12


class TestApproxMajority:
    def test_exact_small(self):
        assert approx_majority_min_degree(1, "exact") == 1
        assert approx_majority_min_degree(2, "exact") == 1
        assert approx_majority_min_degree(3, "exact") == 1

    def test_degree0_band_witness(self):
        # (5/6) x1 places every point of the two-variable cube in a band
        vals = [5 / 6 * (1 - 2 * ((x >> 0) & 1)) for x in range(4)]
        assert all(2 / 3 <= abs(v) <= 1 for v in vals)

    def test_symmetric_upper_bounds(self):
        assert approx_majority_min_degree(1, "symmetric") == 1
        assert approx_majority_min_degree(2, "symmetric") == 2
        for n in (3, 4, 5):
            d_sym = approx_majority_min_degree(n, "symmetric")
            assert d_sym <= n
        assert approx_majority_min_degree(3, "symmetric") >= approx_majority_min_degree(
            3, "exact"
        )
