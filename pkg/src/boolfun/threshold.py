"""Linear and polynomial threshold functions: representation, enumeration,
degree and sparsity extremals.

sgn(0) never occurs by construction: ltf() rejects specs with a tie, and
every feasibility question is posed with margin >= 1.
"""

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import masks_of_weight_at_most, popcounts_upto
from .errors import CapacityError, DomainError, LpError, TieError
from .function import BooleanFunction
from .lp import band_feasibility, band_feasibility_float, sign_feasibility
from .spectrum import wht

THRESHOLD_TAIL_MAX_N = 30
ENUM_LP_MAX_N = 4
ENUM_WEIGHT_BOUND = 12
ENUM_THETA_BOUND = 60


@dataclass(frozen=True)
class LtfSpec:
    """Threshold spec: induced function is sgn(<w, x> - theta)."""

    weights: tuple
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))

    @property
    def n(self) -> int:
        return len(self.weights)

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "weights": [float(w) for w in self.weights],
             "theta": float(self.theta)},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, s: str) -> "LtfSpec":
        d = json.loads(s)
        return cls(tuple(d["weights"]), d["theta"])


@dataclass(frozen=True)
class PtfRep:
    """Sparse multilinear sign-representation: mask -> real coefficient."""

    n: int
    monomials: dict

    def __post_init__(self):
        object.__setattr__(
            self, "monomials",
            {int(m): float(c) for m, c in self.monomials.items() if c != 0},
        )

    @property
    def sparsity(self) -> int:
        return len(self.monomials)

    @property
    def degree(self) -> int:
        return max((bin(m).count("1") for m in self.monomials), default=0)

    def table(self) -> np.ndarray:
        """Evaluate the polynomial on all of {-1,1}^n."""
        vals = np.zeros(1 << self.n)
        idx = np.arange(1 << self.n, dtype=np.int64)
        for mask, c in self.monomials.items():
            chi = 1 - 2 * (np.bitwise_count((idx & mask).astype(np.uint64)).astype(np.int64) & 1)
            vals += c * chi
        return vals

    def sign_represents(self, f: BooleanFunction) -> bool:
        """min_x f(x) p(x) > 0 check."""
        return bool((f.table * self.table()).min() > 0)

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n,
             "monomials": {format(m, "x"): c for m, c in sorted(self.monomials.items())}},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, s: str) -> "PtfRep":
        d = json.loads(s)
        return cls(d["n"], {int(m, 16): c for m, c in d["monomials"].items()})


# --- exact scaled-integer evaluation ----------------------------------------


def _scaled_integers(values):
    """Exact common-denominator integer lift of rationals/floats."""
    fracs = [Fraction(v) for v in values]
    denom = 1
    for fr in fracs:
        denom = denom * fr.denominator // math.gcd(denom, fr.denominator)
    return [int(fr * denom) for fr in fracs], denom


def _dot_products(weights_int, n):
    """<w, x> over all sign patterns; int64 when safe, object otherwise."""
    bound = sum(abs(w) for w in weights_int)
    dtype = np.int64 if bound < (1 << 62) else object
    sums = np.zeros(1, dtype=dtype)
    out_len = 1
    for i, w in enumerate(weights_int):
        w = w if dtype is object else np.int64(w)
        plus = sums + w   # bit i clear: x_i = +1
        minus = sums - w  # bit i set:  x_i = -1
        merged = np.empty(2 * out_len, dtype=dtype)
        merged[:out_len] = plus
        merged[out_len:] = minus
        sums = merged
        out_len *= 2
    return sums


def ltf(spec: LtfSpec) -> BooleanFunction:
    """Truth table of sgn(<w,x> - theta); a tie at any point is an error."""
    scaled, _ = _scaled_integers(list(spec.weights) + [spec.theta])
    *w_int, t_int = scaled
    dots = _dot_products(w_int, spec.n)
    if bool(np.any(dots == t_int)):
        x = int(np.nonzero(dots == t_int)[0][0])
        raise TieError(f"<w,x> = theta at point {x}; perturb theta")
    table = np.where(dots > t_int, 1, -1).astype(np.int8)
    return BooleanFunction(spec.n, table)


def threshold_tail(a, theta, strict: bool = False) -> Fraction:
    """Pr_x[|<a,x>| <= theta] (or < theta) as an exact rational.

    All inputs lift exactly to a common integer scale (floats are dyadic
    rationals), so the count is exact; meet-in-the-middle keeps n <= 30
    enumerable.
    """
    n = len(a)
    if n > THRESHOLD_TAIL_MAX_N:
        raise CapacityError(f"threshold tail capped at n = {THRESHOLD_TAIL_MAX_N}")
    scaled, _ = _scaled_integers(list(a) + [theta])
    *w_int, t_int = scaled
    if t_int < 0:
        return Fraction(0)
    n1 = n // 2
    left = np.sort(_dot_products(w_int[:n1], n1))
    right = np.sort(_dot_products(w_int[n1:], n - n1))
    # count pairs with -t <= l + r <= t, exact integer comparisons
    lo_side = "right" if strict else "left"
    hi_side = "left" if strict else "right"
    lo = np.searchsorted(right, -t_int - left, side=lo_side)
    hi = np.searchsorted(right, t_int - left, side=hi_side)
    return Fraction(int((hi - lo).sum()), 1 << n)


# --- LTF recognition and enumeration ----------------------------------------


def _ltf_matrix(f: BooleanFunction) -> np.ndarray:
    n = f.n
    idx = np.arange(1 << n, dtype=np.int64)
    cols = [(1 - 2 * ((idx >> i) & 1)) for i in range(n)]
    cols.append(-np.ones(1 << n, dtype=np.int64))
    A = np.stack(cols, axis=1)
    return A * f.table[:, None]


def is_ltf(f: BooleanFunction, force_exact: bool = False) -> bool:
    """LP feasibility of {w, theta : f(x)(<w,x> - theta) >= 1 for all x}."""
    if f.n > 16:
        raise CapacityError("is_ltf LP capped at n = 16")
    feasible, _, _ = sign_feasibility(_ltf_matrix(f), force_exact=force_exact)
    return feasible


def is_unate(f: BooleanFunction) -> bool:
    """Monotone up or down in every coordinate (necessary for an LTF)."""
    idx = np.arange(1 << f.n)
    for i in range(f.n):
        hi = f.table[idx & ~(1 << i)]  # x_i = +1 endpoint of each edge
        lo = f.table[idx | (1 << i)]
        up = bool(np.any(lo < hi))
        down = bool(np.any(lo > hi))
        if up and down:
            return False
    return True


def _signed_perm_gathers(n):
    """Index arrays mapping a table through every signed coordinate permutation."""
    size = 1 << n
    idx = np.arange(size, dtype=np.int64)
    bits = [(idx >> i) & 1 for i in range(n)]
    gathers = []
    for perm in itertools.permutations(range(n)):
        base = np.zeros(size, dtype=np.int64)
        for j in range(n):
            base |= bits[perm[j]] << j
        for s in range(size):
            gathers.append(base ^ s)
    return gathers


def enumerate_ltfs(n: int, method: str = "auto"):
    """The complete deduplicated set of n-variable LTFs.

    n <= 4: LP scan over all 2^(2^n) functions (unate prefilter, certified
    verdicts). n = 5: integer-weight enumeration, weights in [-12, 12],
    theta in [-60, 60], canonicalized by signed permutations; documented as
    heuristic-complete, cross-checked against the LP scan at n <= 4.
    """
    if method == "auto":
        method = "lp" if n <= ENUM_LP_MAX_N else "weights"
    if method == "lp":
        if n > ENUM_LP_MAX_N:
            raise CapacityError("LP scan capped at n = 4")
        out = []
        for v in range(1 << (1 << n)):
            f = BooleanFunction.from_table_int(n, v)
            if not is_unate(f):
                continue
            if is_ltf(f):
                out.append(f)
        return out
    if method != "weights":
        raise DomainError(f"unknown enumeration method {method!r}")
    if n > 5:
        raise CapacityError("LTF enumeration capped at n = 5")
    return _enumerate_ltfs_weights(n)


def _enumerate_ltfs_weights(n: int):
    size = 1 << n
    signs = np.array(
        [[1 - 2 * ((x >> i) & 1) for i in range(n)] for x in range(size)],
        dtype=np.int64,
    )
    canonical = set()
    for w in itertools.combinations_with_replacement(
        range(ENUM_WEIGHT_BOUND + 1), n
    ):
        dots = signs @ np.array(w, dtype=np.int64)
        lo, hi = int(dots.min()), int(dots.max())
        thetas = {min(hi + 1, ENUM_THETA_BOUND), max(lo - 1, -ENUM_THETA_BOUND)}
        for d in np.unique(dots):
            for t in (int(d) - 1, int(d) + 1):
                if -ENUM_THETA_BOUND <= t <= ENUM_THETA_BOUND:
                    thetas.add(t)
        for t in thetas:
            if bool(np.any(dots == t)):
                continue
            table = np.where(dots > t, 1, -1).astype(np.int8)
            canonical.add(table.tobytes())
    tables = np.stack(
        [np.frombuffer(b, dtype=np.int8) for b in sorted(canonical)]
    )
    pow2 = (1 << np.arange(size, dtype=object))
    seen = set()
    out = []
    for gather in _signed_perm_gathers(n):
        transformed = tables[:, gather]
        neg = transformed < 0
        for row_bits, row in zip(neg, transformed):
            key = int(np.dot(row_bits.astype(object), pow2))
            if key not in seen:
                seen.add(key)
                out.append(row)
    out_fns = [BooleanFunction(n, t) for t in out]
    out_fns.sort(key=lambda f: f.table_int())
    return out_fns


# --- PTF degree and sparsity -------------------------------------------------


def _chi_matrix(n: int, masks) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    cols = []
    for m in masks:
        cols.append(1 - 2 * (np.bitwise_count((idx & m).astype(np.uint64)).astype(np.int64) & 1))
    return np.stack(cols, axis=1)


def ptf_degree(f: BooleanFunction, confirm: str = "auto") -> int:
    """Least k with a feasible degree-k sign representation.

    Feasibility is monotone in k, so certifying k* feasible and k*-1
    infeasible pins the answer. confirm='exact' forces the rational simplex
    on those two verdicts; 'auto' does so while the LP stays small.
    """
    if f.n > 10:
        raise CapacityError("ptf_degree capped at n = 10")
    last_infeasible = -1
    for k in range(f.n + 1):
        masks = masks_of_weight_at_most(f.n, k)
        A = _chi_matrix(f.n, masks) * f.table[:, None]
        exact = confirm == "exact" or (
            confirm == "auto" and (1 << f.n) * len(masks) <= 200_000
        )
        try:
            feasible, _, _ = sign_feasibility(A, force_exact=False)
            if feasible and exact and k > 0:
                # re-certify the boundary pair exactly
                prev_masks = masks_of_weight_at_most(f.n, k - 1)
                A_prev = _chi_matrix(f.n, prev_masks) * f.table[:, None]
                ok_prev, _, _ = sign_feasibility(A_prev, force_exact=True)
                ok_here, _, _ = sign_feasibility(A, force_exact=True)
                if ok_prev or not ok_here:
                    raise LpError(
                        "float/exact disagreement in degree search",
                        last_infeasible=last_infeasible,
                    )
        except LpError as exc:
            exc.last_infeasible = last_infeasible
            raise
        if feasible:
            return k
        last_infeasible = k
    raise LpError("no representation up to full degree", last_infeasible=last_infeasible)


def ptf_sparsity(f: BooleanFunction, limit: int | None = None):
    """Minimal number of monomials in any sign representation of f.

    Supports are scanned in size order with coordinate-permutation symmetry
    pruning (f's automorphism group). Returns the minimum, or None if every
    support of size <= limit is infeasible.
    """
    n = f.n
    if n > 6:
        raise CapacityError("ptf_sparsity capped at n = 6")
    size = 1 << n
    if limit is None:
        limit = size
    if limit > size:
        raise DomainError("limit cannot exceed 2^n")
    aut = _automorphisms(f)
    all_masks = list(range(size))
    for m in range(1, limit + 1):
        for supp in itertools.combinations(all_masks, m):
            if not _is_canonical_support(supp, aut):
                continue
            A = _chi_matrix(n, supp) * f.table[:, None]
            feasible, _, _ = sign_feasibility(A)
            if feasible:
                return m
    return None


def _automorphisms(f: BooleanFunction):
    """Coordinate permutations fixing f, as bit-relabeling maps."""
    n = f.n
    idx = np.arange(1 << n, dtype=np.int64)
    bits = [(idx >> i) & 1 for i in range(n)]
    auts = []
    for perm in itertools.permutations(range(n)):
        gather = np.zeros(1 << n, dtype=np.int64)
        for j in range(n):
            gather |= bits[perm[j]] << j
        if np.array_equal(f.table[gather], f.table):
            auts.append(perm)
    return auts


def _apply_perm_to_mask(mask: int, perm) -> int:
    out = 0
    for j, p in enumerate(perm):
        if (mask >> p) & 1:
            out |= 1 << j
    return out


def _is_canonical_support(supp, auts) -> bool:
    key = tuple(sorted(supp))
    for perm in auts:
        image = tuple(sorted(_apply_perm_to_mask(m, perm) for m in supp))
        if image < key:
            return False
    return True


# --- extremal constructions ---------------------------------------------------


def gl_extremal(n: int, k: int, tilt: str = "positive"):
    """The symmetric degree-k threshold witness: f = sgn(p(x_1 + ... + x_n))
    with p alternating sign on the k+1 levels closest to zero.

    When the window cannot be symmetric the tie is broken toward positive
    levels ('positive', default) or negative ('negative'); both variants are
    worth comparing.
    """
    if not 1 <= k <= n:
        raise DomainError("need 1 <= k <= n")
    levels = [n - 2 * j for j in range(n + 1)]
    sign_pref = -1 if tilt == "positive" else 1
    ordered = sorted(levels, key=lambda s: (abs(s), sign_pref * s))
    window = sorted(ordered[: k + 1])
    # alternate with +1 at the top of the window
    targets = {s: Fraction((-1) ** (k - i)) for i, s in enumerate(window)}
    poly = _lagrange(window, [targets[s] for s in window])
    table = np.empty(1 << n, dtype=np.int8)
    level_sign = {}
    for s in levels:
        val = _poly_eval(poly, Fraction(s))
        if val == 0:
            raise DomainError(f"interpolant vanishes at level {s}")
        level_sign[s] = 1 if val > 0 else -1
    pc = popcounts_upto(1 << n)
    for j in range(n + 1):
        table[pc == j] = level_sign[n - 2 * j]
    f = BooleanFunction(n, table)
    rep = _symmetric_ptf(n, k, poly)
    return f, rep


def _lagrange(xs, ys):
    """Interpolating polynomial coefficients (ascending), exact Fractions."""
    k = len(xs) - 1
    coeffs = [Fraction(0)] * (k + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = _poly_mul_linear(basis, -Fraction(xj))
            denom *= Fraction(xi) - Fraction(xj)
        scale = yi / denom
        for d in range(len(basis)):
            coeffs[d] += scale * basis[d]
    return coeffs


def _poly_mul_linear(coeffs, c0):
    """(c0 + x) * poly."""
    out = [Fraction(0)] * (len(coeffs) + 1)
    for d, c in enumerate(coeffs):
        out[d] += c * c0
        out[d + 1] += c
    return out


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _symmetric_ptf(n: int, k: int, poly) -> PtfRep:
    """Multilinear coefficients of p(x_1+...+x_n); level-j coefficient via
    the exact hypergeometric contraction."""
    level_vals = {s: _poly_eval(poly, Fraction(s)) for s in range(-n, n + 1, 2)}
    monomials = {}
    for j in range(k + 1):
        c = Fraction(0)
        for a in range(j + 1):
            for b in range(n - j + 1):
                s = n - 2 * (a + b)
                c += (
                    Fraction(math.comb(j, a) * math.comb(n - j, b))
                    * ((-1) ** a)
                    * level_vals[s]
                )
        c /= 1 << n
        if c:
            for mask in _masks_of_weight(n, j):
                monomials[mask] = float(c)
    return PtfRep(n, monomials)


def _masks_of_weight(n, j):
    for combo in itertools.combinations(range(n), j):
        m = 0
        for i in combo:
            m |= 1 << i
        yield m


def intersect_halfspaces(specs) -> BooleanFunction:
    """Pointwise AND (TRUE <-> -1) of the given threshold functions."""
    if not specs:
        raise DomainError("need at least one halfspace")
    n = specs[0].n
    if any(s.n != n for s in specs):
        raise DomainError("halfspaces must share arity")
    tables = [ltf(s).table for s in specs]
    return BooleanFunction(n, np.max(np.stack(tables), axis=0).astype(np.int8))


# --- approximate majority -----------------------------------------------------


def approx_majority_min_degree(n: int, mode: str = "symmetric") -> int:
    """Least degree of f into [-1,-2/3] u [2/3,1] with the majority bands
    forced on |sum x_i| >= n/2; symmetric mode is an upper bound.

    Symmetric mode enumerates band patterns over the middle levels and
    solves a univariate interpolation LP per pattern; exact mode does the
    same over middle points with multilinear coefficients.
    """
    lo_band = (Fraction(-1), Fraction(-2, 3))
    hi_band = (Fraction(2, 3), Fraction(1))
    if mode == "symmetric":
        if n > 20:
            raise CapacityError("symmetric mode capped at n = 20")
        levels = [n - 2 * j for j in range(n + 1)]
        fixed_hi = [s for s in levels if 2 * s >= n]
        fixed_lo = [s for s in levels if 2 * s <= -n]
        middle = [s for s in levels if -n < 2 * s < n]
        for d in range(n + 1):
            if _symmetric_band_feasible(d, fixed_hi, fixed_lo, middle, lo_band, hi_band):
                return d
        raise LpError(f"infeasible up to degree {n}", last_infeasible=n)
    if mode == "exact":
        if n > 3:
            raise CapacityError("exact mode capped at n = 3")
        return _exact_band_min_degree(n, lo_band, hi_band)
    raise DomainError(f"unknown mode {mode!r}")


def _symmetric_band_feasible(d, fixed_hi, fixed_lo, middle, lo_band, hi_band):
    base_rows = {s: [Fraction(s) ** j for j in range(d + 1)] for s in
                 fixed_hi + fixed_lo + middle}
    for pattern in range(1 << len(middle)):
        rows, lo, hi = [], [], []
        for s in fixed_hi:
            rows.append(base_rows[s]); lo.append(hi_band[0]); hi.append(hi_band[1])
        for s in fixed_lo:
            rows.append(base_rows[s]); lo.append(lo_band[0]); hi.append(lo_band[1])
        for b, s in enumerate(middle):
            band = hi_band if (pattern >> b) & 1 else lo_band
            rows.append(base_rows[s]); lo.append(band[0]); hi.append(band[1])
        if band_feasibility_float(rows, lo, hi) is not None:
            if band_feasibility(rows, lo, hi) is not None:
                return True
    return False


def _exact_band_min_degree(n, lo_band, hi_band):
    size = 1 << n
    pc = popcounts_upto(size)
    sums = n - 2 * pc
    for d in range(n + 1):
        masks = masks_of_weight_at_most(n, d)
        chi = _chi_matrix(n, masks)
        fixed_hi = [x for x in range(size) if 2 * sums[x] >= n]
        fixed_lo = [x for x in range(size) if 2 * sums[x] <= -n]
        middle = [x for x in range(size) if -n < 2 * sums[x] < n]
        for pattern in range(1 << len(middle)):
            rows, lo, hi = [], [], []
            for x in fixed_hi:
                rows.append([int(v) for v in chi[x]]); lo.append(hi_band[0]); hi.append(hi_band[1])
            for x in fixed_lo:
                rows.append([int(v) for v in chi[x]]); lo.append(lo_band[0]); hi.append(lo_band[1])
            for b, x in enumerate(middle):
                band = hi_band if (pattern >> b) & 1 else lo_band
                rows.append([int(v) for v in chi[x]]); lo.append(band[0]); hi.append(band[1])
            if band_feasibility_float(rows, lo, hi) is not None:
                if band_feasibility(rows, lo, hi) is not None:
                    return d
    raise LpError(f"infeasible up to degree {n}", last_infeasible=n)
