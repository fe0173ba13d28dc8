"""Additive combinatorics and F2-polynomial computations over F2^n.

Sets are dense bitsets over 2^n points. Triangle counting has two fully
independent routes: the cubic-character-sum identity on the transform of
the indicator, and a literal membership double loop; tests hold them equal.
"""

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .bits import popcounts_upto
from .errors import CapacityError, DomainError, PreconditionError
from .function import BooleanFunction
from .rng import philox_generator

TRIANGLE_SPECTRAL_MAX_N = 24
TRIANGLE_BRUTE_MAX_N = 13
SUBSPACE_EXHAUSTIVE_MAX_N = 14
FREENESS_ENUM_MAX_BITS = 26


@dataclass(frozen=True)
class F2Set:
    """Subset of F2^n as a dense membership bitset."""

    n: int
    member: np.ndarray = field(compare=False)

    def __post_init__(self):
        if not 1 <= self.n <= TRIANGLE_SPECTRAL_MAX_N:
            raise CapacityError(f"dimension {self.n} outside 1..{TRIANGLE_SPECTRAL_MAX_N}")
        member = np.array(self.member, dtype=bool)
        if member.shape != ((1 << self.n),):
            raise ValueError(f"membership table must have length 2^{self.n}")
        member.setflags(write=False)
        object.__setattr__(self, "member", member)

    @classmethod
    def from_elements(cls, n: int, elements) -> "F2Set":
        member = np.zeros(1 << n, dtype=bool)
        for e in elements:
            if not 0 <= e < (1 << n):
                raise ValueError(f"element {e} outside F2^{n}")
            member[e] = True
        return cls(n, member)

    @classmethod
    def full(cls, n: int) -> "F2Set":
        return cls(n, np.ones(1 << n, dtype=bool))

    @classmethod
    def linear_subspace(cls, n: int, basis) -> "F2Set":
        pts = {0}
        for b in basis:
            pts |= {p ^ b for p in pts}
        return cls.from_elements(n, pts)

    def elements(self) -> np.ndarray:
        return np.nonzero(self.member)[0].astype(np.int64)

    @property
    def size(self) -> int:
        return int(self.member.sum())

    @property
    def density(self) -> Fraction:
        return Fraction(self.size, 1 << self.n)

    def __contains__(self, x: int) -> bool:
        return bool(self.member[x])

    def __eq__(self, other):
        return (
            isinstance(other, F2Set)
            and self.n == other.n
            and np.array_equal(self.member, other.member)
        )

    def __hash__(self):
        return hash((self.n, self.member.tobytes()))

    def to_str(self) -> str:
        """Hex bitset with explicit n header: "<n>:<hex>", bit x = membership."""
        val = int.from_bytes(
            np.packbits(self.member.astype(np.uint8), bitorder="little").tobytes(),
            "little",
        )
        digits = max(1, (1 << self.n) // 4)
        return f"{self.n}:{format(val, f'0{digits}x')}"

    @classmethod
    def from_str(cls, s: str) -> "F2Set":
        head, _, hexpart = s.partition(":")
        n = int(head)
        val = int(hexpart, 16)
        size = 1 << n
        raw = val.to_bytes((size + 7) // 8, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return cls(n, bits[:size].astype(bool))


def sumset(a: F2Set, b: F2Set) -> F2Set:
    """A + B = {x ^ y : x in A, y in B}."""
    if a.n != b.n:
        raise DomainError("sumset requires equal dimension")
    if a.size == 0 or b.size == 0:
        return F2Set(a.n, np.zeros(1 << a.n, dtype=bool))
    small, large = (a, b) if a.size <= b.size else (b, a)
    idx = np.arange(1 << a.n, dtype=np.int64)
    out = np.zeros(1 << a.n, dtype=bool)
    for e in small.elements():
        out |= large.member[idx ^ int(e)]
    return F2Set(a.n, out)


def iterated_sumset(a: F2Set, k: int) -> F2Set:
    """kA = A + A + ... + A (k summands)."""
    if k < 1:
        raise DomainError("need k >= 1")
    acc = a
    for _ in range(k - 1):
        acc = sumset(acc, a)
    return acc


def doubling(a: F2Set) -> Fraction:
    if a.size == 0:
        raise DomainError("doubling undefined for the empty set")
    return Fraction(sumset(a, a).size, a.size)


# --- triangles ----------------------------------------------------------------


def _indicator_transform(a: F2Set) -> np.ndarray:
    buf = a.member.astype(np.int64)
    kernels.wht_inplace(buf)
    return buf


def triangle_count(a: F2Set, include_degenerate: bool = True) -> int:
    """#{(x, y) : x, y, x^y all in A}, via sum of cubes of the transform."""
    w = _indicator_transform(a)
    if a.n <= 20:
        cubes = int((w * w * w).sum())
    else:
        cubes = sum(int(v) ** 3 for v in w)
    total = cubes >> a.n
    if include_degenerate:
        return total
    zero_in = int(a.member[0])
    return total - zero_in * (3 * a.size - 2)


def triangle_count_bruteforce(a: F2Set, include_degenerate: bool = True) -> int:
    """Same count by the literal double loop with membership tests."""
    if a.n > TRIANGLE_BRUTE_MAX_N:
        raise CapacityError(f"brute-force path capped at n = {TRIANGLE_BRUTE_MAX_N}")
    els = a.elements()
    total = kernels.triangle_pairs(a.member.astype(np.uint8), els)
    if include_degenerate:
        return total
    count = 0
    member = a.member
    for x in els:
        for y in els:
            if x != 0 and y != 0 and x != y and member[x ^ y]:
                count += 1
    return count


def triangle_density(a: F2Set, include_degenerate: bool = True) -> Fraction:
    """Pr_{x,y}[x, y, x+y in A] as an exact rational."""
    return Fraction(triangle_count(a, include_degenerate), 1 << (2 * a.n))


def triangle_removal_distance(a: F2Set, mode: str = "exact"):
    """Fewest deletions making A triangle-free.

    exact: branch-and-bound hitting set over triangle supports (n <= 8);
    greedy: repeatedly delete the element covering the most triangles, ties
    to the lowest index (n <= 20); an upper bound.
    """
    if mode == "exact":
        if a.n > 8:
            raise CapacityError("exact removal capped at n = 8")
        return _removal_exact(a)
    if mode == "greedy":
        if a.n > 20:
            raise CapacityError("greedy removal capped at n = 20")
        return _removal_greedy(a)
    raise DomainError(f"unknown mode {mode!r}")


def _triangle_supports(a: F2Set):
    els = [int(e) for e in a.elements()]
    member = a.member
    supports = set()
    for i, x in enumerate(els):
        for y in els[i:]:
            z = x ^ y
            if member[z]:
                supports.add(frozenset((x, y, z)))
    return [set(s) for s in supports]


def _removal_exact(a: F2Set) -> int:
    supports = _triangle_supports(a)
    best = [len(a.elements())]

    def lower_bound(remaining):
        used = set()
        count = 0
        for s in remaining:
            if not (s & used):
                used |= s
                count += 1
        return count

    def dfs(remaining, removed):
        if not remaining:
            best[0] = min(best[0], removed)
            return
        if removed + lower_bound(remaining) >= best[0]:
            return
        target = min(remaining, key=lambda s: (len(s), sorted(s)))
        for e in sorted(target):
            rest = [s for s in remaining if e not in s]
            dfs(rest, removed + 1)

    dfs(supports, 0)
    return best[0]


def _removal_greedy(a: F2Set) -> int:
    member = a.member.copy()
    removed = 0
    while True:
        cur = F2Set(a.n, member)
        total = triangle_count(cur)
        if total == 0:
            return removed
        w = _indicator_transform(cur)
        sq = w * w if a.n <= 20 else w.astype(object) ** 2
        buf = np.array(sq, dtype=np.int64) if a.n <= 20 else sq
        if a.n <= 20:
            kernels.wht_inplace(buf)
            pair_counts = buf >> a.n
        else:
            pair_counts = np.array(
                [int(v) >> a.n for v in _object_wht(sq)], dtype=object
            )
        zero_in = int(member[0])
        els = np.nonzero(member)[0]
        cover = 3 * pair_counts[els] - 3 * zero_in
        if member[0]:
            cover[np.searchsorted(els, 0)] += zero_in
        pick = int(els[int(np.argmax(cover))])
        member[pick] = False
        removed += 1


def _object_wht(arr):
    a = list(arr)
    size = len(a)
    h = 1
    while h < size:
        base = 0
        while base < size:
            for j in range(base, base + h):
                x, y = a[j], a[j + h]
                a[j] = x + y
                a[j + h] = x - y
            base += 2 * h
        h <<= 1
    return a


# --- subspaces ------------------------------------------------------------------


@dataclass(frozen=True)
class AffineSubspace:
    """shift + span(basis); basis kept in reduced echelon form."""

    n: int
    basis: tuple
    shift: int = 0

    def __post_init__(self):
        basis = tuple(int(b) for b in self.basis)
        if _f2_rank(basis) != len(basis):
            raise ValueError("basis vectors must be independent")
        object.__setattr__(self, "basis", basis)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def codimension(self) -> int:
        return self.n - len(self.basis)

    def points(self) -> np.ndarray:
        pts = np.array([self.shift], dtype=np.int64)
        for b in self.basis:
            pts = np.concatenate([pts, pts ^ b])
        return pts

    def contains(self, x: int) -> bool:
        v = x ^ self.shift
        for b in sorted(self.basis, reverse=True):
            if v ^ b < v:
                v ^= b
        return v == 0


def _f2_rank(vectors) -> int:
    rows = []
    for v in vectors:
        for r in rows:
            v = min(v, v ^ r)
        if v:
            rows.append(v)
        rows.sort(reverse=True)
    return len(rows)


@dataclass(frozen=True)
class SubspaceSearchResult:
    subspace: AffineSubspace | None
    exhaustive: bool
    nodes: int


def subspace_in_set(
    s: F2Set,
    d: int,
    eta: float = 1.0,
    mode: str = "auto",
    node_budget: int = 2_000_000,
    seed: int = 0,
) -> SubspaceSearchResult:
    """Find an affine subspace of dimension d with >= eta of its points in S.

    Exhaustive mode (n <= 14) walks canonical reduced-echelon systems in
    lexicographic order with miss-count pruning, so the first hit is a
    deterministic witness and a miss is a proof. Otherwise a seeded random
    search runs within the node budget; the result records which one ran.
    """
    if not 0 < eta <= 1:
        raise DomainError("eta must lie in (0, 1]")
    if not 0 <= d <= s.n:
        raise DomainError("dimension out of range")
    if mode == "auto":
        mode = "exhaustive" if s.n <= SUBSPACE_EXHAUSTIVE_MAX_N else "random"
    if mode == "exhaustive":
        if s.n > SUBSPACE_EXHAUSTIVE_MAX_N:
            raise CapacityError(
                f"exhaustive subspace search capped at n = {SUBSPACE_EXHAUSTIVE_MAX_N}"
            )
        return _subspace_exhaustive(s, d, eta, node_budget)
    if mode == "random":
        return _subspace_random(s, d, eta, node_budget, seed)
    raise DomainError(f"unknown mode {mode!r}")


def _subspace_exhaustive(s: F2Set, d: int, eta: float, node_budget: int):
    n = s.n
    member = s.member
    allowed_misses = int((1 - Fraction(eta)) * (1 << d))
    nodes = 0
    budget_hit = False

    if d == 0:
        for shift in range(1 << n):
            if member[shift]:
                return SubspaceSearchResult(AffineSubspace(n, (), shift), True, 1)
        return SubspaceSearchResult(None, True, 1)

    def misses(pts):
        return int((~member[pts]).sum())

    def dfs(basis, pivots, points, miss, prev_pivot, shift):
        nonlocal nodes, budget_hit
        if len(basis) == d:
            return AffineSubspace(n, tuple(basis), shift)
        need = d - len(basis)
        for p in range(prev_pivot - 1, need - 2, -1):
            if (shift >> p) & 1:
                continue
            # reduced w.r.t. chosen pivots; free bits only below p
            free_positions = [q for q in range(p) if q not in pivots]
            for fill in _enumerate_fills(free_positions):
                v = (1 << p) | fill
                nodes += 1
                if nodes > node_budget:
                    budget_hit = True
                    return None
                new_pts = points ^ v
                m2 = miss + misses(new_pts)
                if m2 > allowed_misses:
                    continue
                got = dfs(
                    basis + [v], pivots | {p},
                    np.concatenate([points, new_pts]), m2, p, shift,
                )
                if got is not None or budget_hit:
                    return got
        return None

    for shift in range(1 << n):
        base_miss = 0 if member[shift] else 1
        if base_miss > allowed_misses:
            continue
        got = dfs([], set(), np.array([shift], dtype=np.int64), base_miss, n, shift)
        if got is not None:
            return SubspaceSearchResult(got, True, nodes)
        if budget_hit:
            return SubspaceSearchResult(None, False, nodes)
    return SubspaceSearchResult(None, True, nodes)


def _enumerate_fills(positions):
    for r in range(len(positions) + 1):
        for combo in itertools.combinations(positions, r):
            fill = 0
            for q in combo:
                fill |= 1 << q
            yield fill


def _subspace_random(s: F2Set, d: int, eta: float, node_budget: int, seed: int):
    n = s.n
    member = s.member
    els = s.elements()
    if len(els) == 0:
        return SubspaceSearchResult(None, False, 0)
    rng = philox_generator(seed, 0)
    threshold = eta * (1 << d) - 1e-12
    nodes = 0
    while nodes < node_budget:
        nodes += 1 << d
        shift = int(els[int(rng.integers(len(els)))])
        basis = []
        pts = np.array([shift], dtype=np.int64)
        for _ in range(d):
            v = int(els[int(rng.integers(len(els)))]) ^ shift
            for b in basis:
                v = min(v, v ^ b)
            if v == 0:
                break
            basis.append(v)
            pts = np.concatenate([pts, pts ^ v])
        if len(basis) < d:
            continue
        if int(member[pts].sum()) >= threshold:
            return SubspaceSearchResult(
                AffineSubspace(n, tuple(_reduce_basis(basis)), _canonical_shift(shift, basis)),
                False, nodes,
            )
    return SubspaceSearchResult(None, False, nodes)


def _reduce_basis(basis):
    rows = []
    for v in sorted(basis, reverse=True):
        for r in rows:
            v = min(v, v ^ r)
        if v:
            rows.append(v)
    # back-substitute to reduced echelon
    rows.sort(reverse=True)
    for i, r in enumerate(rows):
        lead = 1 << (r.bit_length() - 1)
        for j in range(i):
            if rows[j] & lead:
                rows[j] ^= r
    return rows


def _canonical_shift(shift, basis):
    v = shift
    for b in sorted(basis, reverse=True):
        if v ^ b < v:
            v ^= b
    return v


# --- linear-invariant patterns ---------------------------------------------------


@dataclass(frozen=True)
class PatternSystem:
    """M in F2^{m x k} (rows as k-bit masks) plus a value pattern sigma."""

    k: int
    rows: tuple
    sigma: tuple

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need k >= 1")
        rows = tuple(int(r) for r in self.rows)
        for r in rows:
            if r >> self.k:
                raise ValueError("matrix row uses more than k columns")
        sigma = tuple(int(v) for v in self.sigma)
        if len(sigma) != self.k or any(v not in (0, 1) for v in sigma):
            raise ValueError("sigma must be a 0/1 vector of length k")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "sigma", sigma)

    @property
    def m(self) -> int:
        return len(self.rows)

    def rank(self) -> int:
        return _f2_rank(self.rows)

    def kernel_basis(self):
        """Basis of {u in F2^k : M u = 0}, as k-bit masks."""
        pivots = {}
        reduced = []
        for r in self.rows:
            for p, pr in pivots.items():
                if (r >> p) & 1:
                    r ^= pr
            if r:
                p = r.bit_length() - 1
                pivots[p] = r
                reduced.append(r)
        basis = []
        pivot_pos = set(pivots)
        for free in range(self.k):
            if free in pivot_pos:
                continue
            u = 1 << free
            # back-solve pivot coordinates
            for p in sorted(pivot_pos, reverse=False):
                row = pivots[p]
                val = bin(row & u).count("1") & 1
                if val:
                    u ^= 1 << p
            basis.append(u)
        return basis

    def to_json(self) -> str:
        return json.dumps(
            {"k": self.k,
             "rows": [format(r, f"0{self.k}b") for r in self.rows],
             "sigma": list(self.sigma)},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, s: str) -> "PatternSystem":
        d = json.loads(s)
        return cls(d["k"], tuple(int(r, 2) for r in d["rows"]), tuple(d["sigma"]))


def freeness_check(a: F2Set, p: PatternSystem):
    """Is the 0/1 indicator of A (M, sigma)-free?

    Enumerates the solution space of MX = 0 through a kernel basis: X is
    determined by r = k - rank(M) free vectors w in F2^n. Returns
    (True, None) or (False, X) with X the witness found first in
    lexicographic w order.
    """
    n = a.n
    basis = p.kernel_basis()
    r = len(basis)
    if r * n > FREENESS_ENUM_MAX_BITS:
        raise CapacityError(
            f"freeness enumeration needs 2^{r * n} candidates; cap 2^{FREENESS_ENUM_MAX_BITS}"
        )
    member = a.member
    k = p.k
    if r == 0:
        X = tuple(0 for _ in range(k))
        if all(member[0] == p.sigma[j] for j in range(k)):
            return False, X
        return True, None
    size = 1 << n
    inner = np.arange(size, dtype=np.int64)
    last = basis[-1]
    for outer in itertools.product(range(size), repeat=r - 1):
        rows_const = []
        for j in range(k):
            c = 0
            for l, w in enumerate(outer):
                if (basis[l] >> j) & 1:
                    c ^= w
            rows_const.append(c)
        match = np.ones(size, dtype=bool)
        for j in range(k):
            xj = (inner ^ rows_const[j]) if ((last >> j) & 1) else np.full(size, rows_const[j], dtype=np.int64)
            match &= member[xj] == bool(p.sigma[j])
        hits = np.nonzero(match)[0]
        if len(hits):
            w_last = int(hits[0])
            ws = list(outer) + [w_last]
            X = []
            for j in range(k):
                xj = 0
                for l, w in enumerate(ws):
                    if (basis[l] >> j) & 1:
                        xj ^= w
                X.append(xj)
            return False, tuple(X)
    return True, None


@dataclass(frozen=True)
class TesterEstimate:
    rate: float
    ci_low: float
    ci_high: float
    samples: int
    seed: int


def freeness_tester_estimate(a: F2Set, p: PatternSystem, samples: int, seed: int) -> TesterEstimate:
    """Sample uniform kernel elements and report the sigma-match rate with a
    Wilson 95% interval. One-sided by construction: a free indicator can
    never produce a match, so the rate is exactly 0."""
    if samples <= 0:
        raise DomainError("need at least one sample")
    n = a.n
    basis = p.kernel_basis()
    r = len(basis)
    member = a.member
    rng = philox_generator(seed, 0)
    hits = 0
    done = 0
    while done < samples:
        m = min(1 << 16, samples - done)
        if r == 0:
            ws = np.zeros((m, 0), dtype=np.int64)
        else:
            ws = rng.integers(0, 1 << n, size=(m, r), dtype=np.int64)
        ok = np.ones(m, dtype=bool)
        for j in range(p.k):
            xj = np.zeros(m, dtype=np.int64)
            for l in range(r):
                if (basis[l] >> j) & 1:
                    xj ^= ws[:, l]
            ok &= member[xj] == bool(p.sigma[j])
        hits += int(ok.sum())
        done += m
    rate = hits / samples
    z = 1.959963984540054
    denom = 1.0 + z * z / samples
    center = (rate + z * z / (2 * samples)) / denom
    half = z * math.sqrt(rate * (1 - rate) / samples + z * z / (4 * samples**2)) / denom
    return TesterEstimate(rate, max(0.0, center - half), min(1.0, center + half), samples, seed)


# --- biased densities --------------------------------------------------------------


@dataclass(frozen=True)
class Density:
    """Probability vector over F2^n (sum 1 within 1e-12, entries >= 0)."""

    n: int
    probs: np.ndarray = field(compare=False)

    def __post_init__(self):
        probs = np.array(self.probs, dtype=np.float64)
        if probs.shape != ((1 << self.n),):
            raise ValueError(f"probability vector must have length 2^{self.n}")
        if np.any(probs < 0):
            raise PreconditionError("negative probability entry")
        if abs(float(probs.sum()) - 1.0) > 1e-12:
            raise PreconditionError("probabilities must sum to 1 (tolerance 1e-12)")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def uniform(cls, n: int) -> "Density":
        return cls(n, np.full(1 << n, 1.0 / (1 << n)))

    @classmethod
    def uniform_on(cls, n: int, elements) -> "Density":
        """Uniform over a multiset of points (repeats weight accordingly)."""
        elements = list(elements)
        if not elements:
            raise DomainError("need a nonempty support")
        probs = np.zeros(1 << n)
        for e in elements:
            probs[e] += 1.0
        return cls(n, probs / len(elements))


def density_bias(phi: Density) -> float:
    """max_{S != 0} |E_phi chi_S| via the transform of phi."""
    buf = phi.probs.astype(np.float64)
    kernels.wht_inplace(buf)
    return float(np.abs(buf[1:]).max()) if phi.n else 0.0


def fooling_error(f, phi: Density) -> float:
    """|E_uniform f - E_phi f| for a +-1 function (BooleanFunction or Dnf)."""
    from .function import Dnf

    if isinstance(f, Dnf):
        f = f.to_function()
    if f.n != phi.n:
        raise DomainError("arity mismatch")
    table = f.table.astype(np.float64)
    return abs(float(table.mean()) - float(table @ phi.probs))


# --- F2 polynomials and correlation --------------------------------------------------


@dataclass(frozen=True)
class F2Poly:
    """Multilinear polynomial over F2: a set of monomial masks, coefficient 1."""

    n: int
    monomials: frozenset

    def __post_init__(self):
        monos = frozenset(int(m) for m in self.monomials)
        for m in monos:
            if m >> self.n:
                raise ValueError("monomial uses variables beyond arity")
        object.__setattr__(self, "monomials", monos)

    @property
    def degree(self) -> int:
        return max((bin(m).count("1") for m in self.monomials), default=0)

    def value_table(self) -> np.ndarray:
        """0/1 values of p on F2^n (index bits are the F2 input)."""
        idx = np.arange(1 << self.n, dtype=np.int64)
        out = np.zeros(1 << self.n, dtype=np.int64)
        for m in self.monomials:
            out ^= ((idx & m) == m).astype(np.int64)
        return out

    def phase_table(self) -> np.ndarray:
        """(-1)^p as +-1 int8."""
        return (1 - 2 * self.value_table()).astype(np.int8)


def max_correlation_low_degree(f: BooleanFunction, d: int, budget: int = 1 << 24):
    """max_p |E[(-1)^{f + p}]| over F2-polynomials p of degree <= d.

    d = 1 closes via the transform (affine phases are characters); d >= 2
    enumerates all monomial subsets with Gray-code incremental updates.
    Returns (Fraction, F2Poly witness).
    """
    n = f.n
    size = 1 << n
    if d >= 1:
        from .spectrum import wht as _wht

        spec = _wht(f)
        best_mask = int(np.argmax(np.abs(spec.coeffs)))
        best_val = int(spec.coeffs[best_mask])
    if d == 1:
        monos = {1 << i for i in range(n) if (best_mask >> i) & 1}
        if best_val < 0:
            monos.add(0)  # constant flip makes the signed correlation positive
        return Fraction(abs(best_val), size), F2Poly(n, frozenset(monos))
    if d < 1:
        raise DomainError("degree must be >= 1")
    monomial_masks = [m for m in range(1, size) if bin(m).count("1") <= d]
    t = len(monomial_masks)
    if 1 << t > budget:
        raise CapacityError(f"would enumerate 2^{t} polynomials; budget 2^{int(math.log2(budget))}")
    subsets = [np.nonzero((np.arange(size, dtype=np.int64) & m) == m)[0] for m in monomial_masks]
    fp = f.table.astype(np.int64).copy()
    corr = int(fp.sum())
    best_abs = abs(corr)
    best_state = 0
    best_corr = corr
    state = 0
    for g in range(1, 1 << t):
        bit = (g & -g).bit_length() - 1
        idx = subsets[bit]
        corr -= 2 * int(fp[idx].sum())
        fp[idx] = -fp[idx]
        state ^= 1 << bit
        if abs(corr) > best_abs:
            best_abs = abs(corr)
            best_state = state
            best_corr = corr
    monos = {monomial_masks[i] for i in range(t) if (best_state >> i) & 1}
    if best_corr < 0:
        monos.add(0)
    return Fraction(best_abs, size), F2Poly(n, frozenset(monos))


# --- quadratic-phase span -------------------------------------------------------------


def _quadratic_phase_dictionary(n: int):
    """All (-1)^q for q of degree <= 2 without constant term (sign-reduced)."""
    monomials = [1 << i for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            monomials.append((1 << i) | (1 << j))
    idx = np.arange(1 << n, dtype=np.int64)
    mono_vals = [((idx & m) == m).astype(np.int64) for m in monomials]
    phases = []
    for q in range(1 << len(monomials)):
        acc = np.zeros(1 << n, dtype=np.int64)
        for b in range(len(monomials)):
            if (q >> b) & 1:
                acc ^= mono_vals[b]
        phases.append(1 - 2 * acc)
    return monomials, phases


def _in_rational_span(columns, target):
    """Exact: is target in the rational span of the given integer vectors?
    Returns the coefficient list (Fractions) or None."""
    mat = [[Fraction(int(c[i])) for c in columns] for i in range(len(target))]
    rhs = [Fraction(int(v)) for v in target]
    m = len(mat)
    p = len(columns)
    row = 0
    pivots = []
    for col in range(p):
        sel = None
        for i in range(row, m):
            if mat[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        rhs[row], rhs[sel] = rhs[sel], rhs[row]
        inv = 1 / mat[row][col]
        mat[row] = [v * inv for v in mat[row]]
        rhs[row] *= inv
        for i in range(m):
            if i != row and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[row])]
                rhs[i] -= factor * rhs[row]
        pivots.append(col)
        row += 1
    coeffs = [Fraction(0)] * p
    for r in range(row, m):
        if rhs[r] != 0:
            return None
    for r, col in enumerate(pivots):
        coeffs[col] = rhs[r]
    return coeffs


def quadratic_span_min_terms(n: int):
    """Least m with AND expressible as a real combination of m quadratic
    phases (-1)^{q_i}; returns (m, coefficients, polynomials).

    Exhaustive subset search in size order with S_n-orbit pruning; exact
    rational elimination decides span membership. Capped at n = 3.
    """
    if n > 3:
        raise CapacityError("quadratic span search capped at n = 3")
    from .function import and_f

    monomials, phases = _quadratic_phase_dictionary(n)
    target = and_f(n).table.astype(np.int64)
    t = len(phases)
    perms = _phase_permutations(n, monomials)
    for m in range(1, t + 1):
        for combo in itertools.combinations(range(t), m):
            if not _combo_canonical(combo, perms):
                continue
            coeffs = _in_rational_span([phases[i] for i in combo], target)
            if coeffs is not None:
                polys = [
                    F2Poly(n, frozenset(mm for b, mm in enumerate(monomials) if (q >> b) & 1))
                    for q in combo
                ]
                return m, coeffs, polys
    raise DomainError("AND is not in the span of the full dictionary (unexpected)")


def _phase_permutations(n: int, monomials):
    """Action of S_n on dictionary indices (phase bitmask relabeling)."""
    mono_index = {m: i for i, m in enumerate(monomials)}
    perms = []
    for perm in itertools.permutations(range(n)):
        mapping = []
        for q in range(1 << len(monomials)):
            out = 0
            for b, m in enumerate(monomials):
                if (q >> b) & 1:
                    pm = 0
                    for i in range(n):
                        if (m >> i) & 1:
                            pm |= 1 << perm[i]
                    out |= 1 << mono_index[pm]
            mapping.append(out)
        perms.append(mapping)
    return perms


def _combo_canonical(combo, perms) -> bool:
    key = tuple(sorted(combo))
    for mapping in perms:
        image = tuple(sorted(mapping[q] for q in combo))
        if image < key:
            return False
    return True
