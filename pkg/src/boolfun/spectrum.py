"""Exact Fourier analysis on the hypercube.

For a Boolean source the spectrum is kept as exact integers: coeffs[S] =
sum_x f(x) chi_S(x) = 2^n fhat(S), so Parseval, degree and entropy-mass
bookkeeping never touch floating point. Real-valued sources carry float64
coefficients with a comparison tolerance of 1e-12.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .bits import popcounts_upto
from .errors import CapacityError
from .function import BooleanFunction, RealHypercubeFunction

FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Walsh-Hadamard coefficients indexed by subset bitmask.

    coeffs[S] = sum_x f(x) chi_S(x); exact int64 for Boolean sources
    (is_exact), float64 otherwise. fhat(S) = coeffs[S] / 2^n.
    """

    n: int
    coeffs: np.ndarray = field(compare=False)

    def __post_init__(self):
        coeffs = np.array(self.coeffs)
        if coeffs.dtype not in (np.dtype(np.int64), np.dtype(np.float64)):
            raise ValueError("coeffs must be int64 or float64")
        if coeffs.shape != ((1 << self.n),):
            raise ValueError(f"coeffs must have length 2^{self.n}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def is_exact(self) -> bool:
        return self.coeffs.dtype == np.int64

    def fhat(self, mask: int):
        if self.is_exact:
            return Fraction(int(self.coeffs[mask]), 1 << self.n)
        return float(self.coeffs[mask]) / (1 << self.n)

    def fhat_dense(self) -> np.ndarray:
        return self.coeffs.astype(np.float64) / (1 << self.n)

    def parseval_mass(self):
        """sum_S coeffs[S]^2; equals 4^n exactly for a Boolean source."""
        if self.is_exact:
            c = self.coeffs.astype(object) if self.n > 15 else self.coeffs
            return int((c * c).sum())
        return float((self.coeffs * self.coeffs).sum())

    def degree(self) -> int:
        """max |S| with a nonzero coefficient (0 for constants)."""
        if self.is_exact:
            nz = np.nonzero(self.coeffs)[0]
        else:
            nz = np.nonzero(np.abs(self.coeffs) > FLOAT_TOL * (1 << self.n))[0]
        if len(nz) == 0:
            return 0
        return int(popcounts_upto(1 << self.n)[nz].max())

    def level_weights_exact(self) -> list:
        """W_k = sum_{|S|=k} coeffs[S]^2 as exact ints (Boolean source only)."""
        if not self.is_exact:
            raise ValueError("exact level weights need an integer spectrum")
        pc = popcounts_upto(1 << self.n)
        sq = self.coeffs.astype(object) * self.coeffs.astype(object) \
            if self.n > 15 else (self.coeffs * self.coeffs)
        return [int(sq[pc == k].sum()) for k in range(self.n + 1)]


def wht(f: BooleanFunction | RealHypercubeFunction) -> Spectrum:
    """Forward transform: coeffs[S] = sum_x f(x) chi_S(x)."""
    if f.n > 24:
        raise CapacityError("transform capped at n = 24")
    if isinstance(f, BooleanFunction):
        buf = f.table.astype(np.int64)
    else:
        buf = f.table.astype(np.float64)
    kernels.wht_inplace(buf)
    return Spectrum(f.n, buf)


def inverse_wht(spec: Spectrum):
    """Inverse transform; returns a BooleanFunction when the result is a
    +-1 table from an exact spectrum, else a RealHypercubeFunction."""
    size = 1 << spec.n
    if spec.is_exact:
        buf = spec.coeffs.astype(np.int64)
        kernels.wht_inplace(buf)
        if np.all(buf % size == 0):
            table = buf // size
            if np.all(np.abs(table) == 1):
                return BooleanFunction(spec.n, table.astype(np.int8))
            return RealHypercubeFunction(spec.n, table.astype(np.float64))
        return RealHypercubeFunction(spec.n, buf.astype(np.float64) / size)
    buf = spec.coeffs.astype(np.float64)
    kernels.wht_inplace(buf)
    return RealHypercubeFunction(spec.n, buf / size)


@dataclass(frozen=True)
class FourierStats:
    influences: tuple
    total_influence: float
    variance: float
    degree: int
    spectral_entropy: float
    w1: float
    linear_sum: float
    max_coeff_sq: float
    mean: float


def fourier_stats(f: BooleanFunction, spec: Spectrum | None = None) -> FourierStats:
    """All the standard spectral statistics of a Boolean function.

    Sums are accumulated on the exact integer spectrum and divided once, so
    degree is tolerance-free and Parseval-derived fields are exact up to the
    final float conversion.
    """
    if spec is None:
        spec = wht(f)
    n = f.n
    size = 1 << n
    four_n = 1 << (2 * n)
    # int64 would overflow in the |S|-weighted sums past n = 13
    big = n > 13
    coeffs = spec.coeffs.astype(object) if big else spec.coeffs
    sq = coeffs * coeffs
    pc = popcounts_upto(size)

    influences = []
    for i in range(n):
        mask = (np.arange(size) >> i) & 1
        influences.append(int(sq[mask == 1].sum()) / four_n)
    tinf = int((sq * pc).sum()) / four_n
    mean_c = int(coeffs[0])
    variance = (four_n - mean_c * mean_c) / four_n

    probs = sq[np.nonzero(sq)[0]]
    entropy = 0.0
    for m in probs:
        p = int(m) / four_n
        entropy -= p * math.log2(p)

    singles = [int(coeffs[1 << i]) for i in range(n)]
    w1 = sum(s * s for s in singles) / four_n
    linear_sum = sum(singles) / size
    max_sq = int(sq.max()) / four_n

    return FourierStats(
        influences=tuple(influences),
        total_influence=tinf,
        variance=variance,
        degree=spec.degree(),
        spectral_entropy=entropy,
        w1=w1,
        linear_sum=linear_sum,
        max_coeff_sq=max_sq,
        mean=mean_c / size,
    )


def spectral_concentration(f: BooleanFunction, eps: float):
    """Smallest prefix of the weight-sorted spectrum with mass >= 1 - eps.

    Sorting squared coefficients descending makes the greedy prefix optimal
    among families of its cardinality; ties break by bitmask order. Returns
    (size, list of masks).
    """
    if not 0 < eps <= 0.5:
        raise ValueError("eps must be in (0, 1/2]")
    spec = wht(f)
    sq = spec.coeffs.astype(object) * spec.coeffs.astype(object)
    order = sorted(range(1 << f.n), key=lambda s: (-sq[s], s))
    need = (1 - Fraction(eps)) * (1 << (2 * f.n))
    mass = 0
    family = []
    for s in order:
        if mass >= need:
            break
        family.append(s)
        mass += int(sq[s])
    return len(family), family


def multilinear_eval(f: BooleanFunction, point) -> float:
    """Evaluate f's multilinear expansion at a real point.

    Contracts one coordinate at a time: f = (1+x_i)/2 * f|x_i=+1 +
    (1-x_i)/2 * f|x_i=-1. Exact on {-1,1}^n (reproduces the table).
    """
    point = np.asarray(point, dtype=np.float64)
    if point.shape != (f.n,):
        raise ValueError(f"point must have length {f.n}")
    vals = f.table.astype(np.float64)
    for i in range(f.n - 1, -1, -1):
        h = vals.size // 2
        plus, minus = vals[:h], vals[h:]
        vals = 0.5 * (plus + minus) + 0.5 * point[i] * (plus - minus)
    return float(vals[0])
