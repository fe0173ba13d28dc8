"""Functions on the hypercube {-1,+1}^n and their standard constructors.

Conventions, fixed repo-wide:
  * logical TRUE <-> -1 via b -> (-1)^b;
  * bit i of a table index x equal to 1 means coordinate x_i = -1;
  * a subset S of coordinates is a bitmask, chi_S(x) = prod_{i in S} x_i
    = (-1)^popcount(x & S).

Truth tables serialize as lowercase hex of the 0/1 table (bit x set iff
f(x) = -1), most-significant index first; see docs/FORMATS.md.
"""

from dataclasses import dataclass, field

import numpy as np

from .bits import popcounts_upto
from .errors import CapacityError, DomainError

MAX_ARITY = 24


def _check_arity(n: int) -> None:
    if not 1 <= n <= MAX_ARITY:
        raise CapacityError(f"arity {n} outside supported range 1..{MAX_ARITY}")


def _hex_digits(n: int) -> int:
    return max(1, (1 << n) // 4)


@dataclass(frozen=True)
class BooleanFunction:
    """A +-1 valued function given by its full truth table."""

    n: int
    table: np.ndarray = field(compare=False)

    def __post_init__(self):
        _check_arity(self.n)
        table = np.array(self.table, dtype=np.int8)
        if table.shape != ((1 << self.n),):
            raise ValueError(f"table must have length 2^{self.n}")
        if not np.all(np.abs(table) == 1):
            raise ValueError("table entries must be -1 or +1")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other):
        return (
            isinstance(other, BooleanFunction)
            and self.n == other.n
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def table_int(self) -> int:
        """The table as an integer: bit x set iff f(x) = -1."""
        bits = (self.table < 0).astype(np.uint8)
        raw = np.packbits(bits, bitorder="little").tobytes()
        return int.from_bytes(raw, "little")

    def to_hex(self) -> str:
        return format(self.table_int(), f"0{_hex_digits(self.n)}x")

    @classmethod
    def from_hex(cls, n: int, s: str) -> "BooleanFunction":
        _check_arity(n)
        s = s.strip().lower()
        if len(s) != _hex_digits(n):
            raise ValueError(
                f"hex table for n={n} must have {_hex_digits(n)} digits, got {len(s)}"
            )
        try:
            val = int(s, 16)
        except ValueError as exc:
            raise ValueError(f"malformed truth-table hex {s!r}") from exc
        if val >> (1 << n):
            raise ValueError("hex table has bits beyond 2^n")
        return cls.from_table_int(n, val)

    @classmethod
    def from_table_int(cls, n: int, val: int) -> "BooleanFunction":
        size = 1 << n
        raw = val.to_bytes((size + 7) // 8, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return cls(n, (1 - 2 * bits[:size].astype(np.int8)).astype(np.int8))

    def negate(self) -> "BooleanFunction":
        return BooleanFunction(self.n, -self.table)

    def is_odd(self) -> bool:
        comp = (1 << self.n) - 1
        idx = np.arange(1 << self.n)
        return bool(np.all(self.table[comp - idx] == -self.table))

    def to_real(self) -> "RealHypercubeFunction":
        return RealHypercubeFunction(self.n, self.table.astype(np.float64))


@dataclass(frozen=True)
class RealHypercubeFunction:
    """A real-valued function on {-1,1}^n given by its value table."""

    n: int
    table: np.ndarray = field(compare=False)

    def __post_init__(self):
        _check_arity(self.n)
        table = np.array(self.table, dtype=np.float64)
        if table.shape != ((1 << self.n),):
            raise ValueError(f"table must have length 2^{self.n}")
        if not np.all(np.isfinite(table)):
            raise ValueError("table entries must be finite")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> float:
        return float(self.table[x])

    def mean(self) -> float:
        return float(self.table.mean())


@dataclass(frozen=True)
class Dnf:
    """DNF over n variables: terms are (pos_mask, neg_mask) literal sets.

    A term accepts x when every pos variable is TRUE (-1, index bit 1) and
    every neg variable is FALSE (+1, index bit 0).
    """

    n: int
    terms: tuple

    def __post_init__(self):
        _check_arity(self.n)
        terms = tuple((int(p), int(q)) for p, q in self.terms)
        if len(terms) < 1:
            raise ValueError("a DNF needs at least one term")
        full = (1 << self.n) - 1
        for p, q in terms:
            if p & q:
                raise ValueError("term with contradictory literals")
            if (p | q) & ~full:
                raise ValueError("term uses variables beyond arity")
        object.__setattr__(self, "terms", terms)

    @property
    def size(self) -> int:
        return len(self.terms)

    def to_function(self) -> BooleanFunction:
        idx = np.arange(1 << self.n, dtype=np.int64)
        sat = np.zeros(1 << self.n, dtype=bool)
        for pos, neg in self.terms:
            sat |= ((idx & pos) == pos) & ((idx & neg) == 0)
        return BooleanFunction(self.n, np.where(sat, -1, 1).astype(np.int8))


# --- constructors -----------------------------------------------------------


def dictator(n: int, i: int = 0) -> BooleanFunction:
    """f(x) = x_i (0-based coordinate)."""
    _check_arity(n)
    if not 0 <= i < n:
        raise DomainError(f"coordinate {i} out of range for n={n}")
    idx = np.arange(1 << n, dtype=np.int64)
    return BooleanFunction(n, (1 - 2 * ((idx >> i) & 1)).astype(np.int8))


def parity(n: int, mask: int | None = None) -> BooleanFunction:
    """chi_S for the given subset mask; defaults to the full parity."""
    _check_arity(n)
    if mask is None:
        mask = (1 << n) - 1
    if mask >> n:
        raise DomainError("mask uses variables beyond arity")
    idx = np.arange(1 << n, dtype=np.int64)
    pc = np.bitwise_count((idx & mask).astype(np.uint64)).astype(np.int64)
    return BooleanFunction(n, (1 - 2 * (pc & 1)).astype(np.int8))


def majority(n: int) -> BooleanFunction:
    """sgn(x_1 + ... + x_n); requires odd n so no ties occur."""
    _check_arity(n)
    if n % 2 == 0:
        raise DomainError("majority needs odd arity")
    pc = popcounts_upto(1 << n)
    return BooleanFunction(n, np.where(pc < n / 2, 1, -1).astype(np.int8))


def and_f(n: int) -> BooleanFunction:
    """Logical AND under TRUE <-> -1: output -1 iff every x_i = -1."""
    _check_arity(n)
    table = np.ones(1 << n, dtype=np.int8)
    table[(1 << n) - 1] = -1
    return BooleanFunction(n, table)


def or_f(n: int) -> BooleanFunction:
    """Logical OR under TRUE <-> -1: output -1 iff some x_i = -1."""
    _check_arity(n)
    table = -np.ones(1 << n, dtype=np.int8)
    table[0] = 1
    return BooleanFunction(n, table)


def mod3(n: int) -> BooleanFunction:
    """Output TRUE (-1) iff the number of TRUE inputs is = 1 mod 3."""
    _check_arity(n)
    pc = popcounts_upto(1 << n)
    return BooleanFunction(n, np.where(pc % 3 == 1, -1, 1).astype(np.int8))


def ip(two_n: int) -> BooleanFunction:
    """Inner product mod 2 on 2n bits: (-1)^(sum x_i y_i), x = low bits, y = high."""
    if two_n % 2:
        raise DomainError("ip needs an even number of inputs")
    _check_arity(two_n)
    n = two_n // 2
    idx = np.arange(1 << two_n, dtype=np.int64)
    low = (1 << n) - 1
    inner = np.bitwise_count(((idx & low) & (idx >> n)).astype(np.uint64)).astype(np.int64)
    return BooleanFunction(two_n, (1 - 2 * (inner & 1)).astype(np.int8))


def tribes(width: int, count: int) -> BooleanFunction:
    """OR of `count` disjoint ANDs of `width` variables (n = width*count)."""
    n = width * count
    terms = []
    for j in range(count):
        pos = ((1 << width) - 1) << (j * width)
        terms.append((pos, 0))
    return Dnf(n, tuple(terms)).to_function()


def constant(n: int, value: int) -> BooleanFunction:
    if value not in (-1, 1):
        raise DomainError("constant value must be -1 or +1")
    _check_arity(n)
    return BooleanFunction(n, np.full(1 << n, value, dtype=np.int8))
