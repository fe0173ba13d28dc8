import numpy as np
import pytest

from boolfun import (
    BooleanFunction,
    CapacityError,
    Dnf,
    DomainError,
    and_f,
    constant,
    dictator,
    ip,
    majority,
    mod3,
    or_f,
    parity,
    tribes,
)


def test_table_validation():
    with pytest.raises(ValueError):
        BooleanFunction(2, np.array([1, -1, 1], dtype=np.int8))
    with pytest.raises(ValueError):
        BooleanFunction(2, np.array([1, -1, 1, 2], dtype=np.int8))
    with pytest.raises(CapacityError):
        BooleanFunction(25, np.ones(8, dtype=np.int8))


def test_convention_bit_means_minus_one():
    d = dictator(3, 0)
    # index bit 0 set -> x_0 = -1
    assert d(0b000) == 1
    assert d(0b001) == -1
    assert d(0b110) == 1


def test_majority_needs_odd():
    with pytest.raises(DomainError):
        majority(4)
    assert majority(1) == dictator(1, 0)


def test_majority3_table():
    maj = majority(3)
    for x in range(8):
        votes = sum(1 if (x >> i) & 1 == 0 else -1 for i in range(3))
        assert maj(x) == (1 if votes > 0 else -1)


def test_and_or_tables():
    f = and_f(2)
    # TRUE <-> -1: AND is -1 exactly when both inputs are -1 (both bits set)
    assert list(f.table) == [1, 1, 1, -1]
    g = or_f(2)
    assert list(g.table) == [1, -1, -1, -1]


def test_ip2_table():
    # spec'd 4-point table over (x1, y1)
    assert list(ip(2).table) == [1, 1, 1, -1]
    with pytest.raises(DomainError):
        ip(3)


def test_ip4_matches_definition():
    f = ip(4)
    for z in range(16):
        x, y = z & 0b11, z >> 2
        assert f(z) == (-1) ** bin(x & y).count("1")


def test_mod3_values():
    f = mod3(3)
    assert f(0b111) == 1  # three TRUE inputs, 3 = 0 mod 3
    assert f(0b001) == -1  # one TRUE input
    assert f(0b011) == 1  # two TRUE inputs


def test_parity_masks():
    f = parity(4, 0b0101)
    for x in range(16):
        assert f(x) == (-1) ** bin(x & 0b0101).count("1")


def test_hex_round_trip():
    rng = np.random.default_rng(11)
    for n in (1, 2, 3, 6):
        for _ in range(20):
            f = BooleanFunction(n, rng.choice([-1, 1], size=1 << n).astype(np.int8))
            assert BooleanFunction.from_hex(n, f.to_hex()) == f
    # most-significant index first, fixed width
    assert majority(3).to_hex() == "e8"
    assert len(parity(4).to_hex()) == 4


def test_hex_rejects_malformed():
    with pytest.raises(ValueError):
        BooleanFunction.from_hex(3, "zz")
    with pytest.raises(ValueError):
        BooleanFunction.from_hex(3, "abc")  # wrong width


def test_dnf():
    with pytest.raises(ValueError):
        Dnf(3, ())
    with pytest.raises(ValueError):
        Dnf(3, ((0b011, 0b001),))  # contradictory literal
    d = Dnf(3, ((0b011, 0b100),))
    f = d.to_function()
    for x in range(8):
        sat = (x & 0b011) == 0b011 and (x & 0b100) == 0
        assert f(x) == (-1 if sat else 1)
    assert d.size == 1


def test_tribes():
    f = tribes(2, 2)
    for x in range(16):
        t1 = (x & 0b0011) == 0b0011
        t2 = (x & 0b1100) == 0b1100
        assert f(x) == (-1 if (t1 or t2) else 1)


def test_odd_detection():
    assert majority(3).is_odd()
    assert dictator(4, 2).is_odd()
    assert not and_f(3).is_odd()
    assert not constant(3, 1).is_odd()
