"""Registered functionals for extremal search.

Each functional evaluates on a single element; the heavy ones also provide
a vectorized batch path over a table matrix. Values must be comparable
floats (constants map to -inf where a ratio is undefined so they never win
a max).
"""

import math

import numpy as np

from . import kernels
from .bits import popcounts_upto
from .errors import DomainError
from .f2n import F2Set, doubling, triangle_density
from .function import BooleanFunction
from .noise import erasure_norm, nicd_agreement, nicd_agreement_batch, stability
from .sensitivity import sensitivity_stats
from .spectrum import fourier_stats


def _batch_spectrum_sq(tables: np.ndarray, n: int):
    buf = tables.astype(np.int64)
    kernels.wht_inplace(buf)
    return buf, buf.astype(np.float64) ** 2 / (1 << (2 * n))


class Functional:
    name = ""
    element_kind = "function"
    defaults: dict = {}

    def value(self, f, **params):
        raise NotImplementedError

    def batch(self, tables, n, **params):
        return np.array(
            [self.value(BooleanFunction(n, t), **params) for t in tables]
        )


class FeiRatio(Functional):
    """Spectral entropy over total influence (-inf for constants)."""

    name = "fei-ratio"

    def value(self, f, **params):
        st = fourier_stats(f)
        if st.total_influence == 0:
            return -math.inf
        return st.spectral_entropy / st.total_influence

    def batch(self, tables, n, **params):
        _, sq = _batch_spectrum_sq(tables, n)
        pc = popcounts_upto(1 << n)
        tinf = sq @ pc
        with np.errstate(divide="ignore", invalid="ignore"):
            ent = -np.where(sq > 0, sq * np.log2(np.where(sq > 0, sq, 1.0)), 0.0).sum(axis=1)
            out = np.where(tinf > 0, ent / np.where(tinf > 0, tinf, 1.0), -np.inf)
        return out


class BsMinusSens(Functional):
    name = "bs-minus-sens"

    def value(self, f, **params):
        st = sensitivity_stats(f)
        return float(st.block_sensitivity - st.max_sensitivity)


class LinsumMinusSqrtDeg(Functional):
    """sum_i fhat(i) - sqrt(deg f); positive values refute the conjecture."""

    name = "linsum-minus-sqrtdeg"

    def value(self, f, **params):
        st = fourier_stats(f)
        return st.linear_sum - math.sqrt(st.degree) if st.degree else st.linear_sum

    def batch(self, tables, n, **params):
        coeffs, _ = _batch_spectrum_sq(tables, n)
        singles = coeffs[:, [1 << i for i in range(n)]].sum(axis=1) / (1 << n)
        pc = popcounts_upto(1 << n)
        nz = coeffs != 0
        deg = np.where(nz.any(axis=1), (nz * pc[None, :]).max(axis=1), 0)
        return singles - np.sqrt(deg.astype(np.float64))


class Stab(Functional):
    name = "stab"
    defaults = {"rho": 0.5}

    def value(self, f, **params):
        return stability(f, params.get("rho", 0.5))

    def batch(self, tables, n, **params):
        rho = params.get("rho", 0.5)
        _, sq = _batch_spectrum_sq(tables, n)
        pc = popcounts_upto(1 << n)
        return sq @ np.power(rho, pc)


class W1(Functional):
    """Weight at level one, sum_i fhat(i)^2."""

    name = "w1"

    def value(self, f, **params):
        return fourier_stats(f).w1

    def batch(self, tables, n, **params):
        coeffs, _ = _batch_spectrum_sq(tables, n)
        singles = coeffs[:, [1 << i for i in range(n)]].astype(np.float64) / (1 << n)
        return (singles**2).sum(axis=1)


class Tinf(Functional):
    name = "tinf"

    def value(self, f, **params):
        return fourier_stats(f).total_influence

    def batch(self, tables, n, **params):
        _, sq = _batch_spectrum_sq(tables, n)
        return sq @ popcounts_upto(1 << n)


class TinfOverSens(Functional):
    name = "tinf-over-sens"

    def value(self, f, **params):
        st = sensitivity_stats(f, with_block=False)
        if st.max_sensitivity == 0:
            return -math.inf
        return float(st.avg_sensitivity) / st.max_sensitivity


class Nicd(Functional):
    name = "nicd"
    defaults = {"r": 10, "eps": 0.26}

    def value(self, f, **params):
        return nicd_agreement(f, int(params.get("r", 10)), params.get("eps", 0.26))

    def batch(self, tables, n, **params):
        return nicd_agreement_batch(tables, n, int(params.get("r", 10)),
                                    params.get("eps", 0.26))


class Erasure(Functional):
    name = "erasure"
    defaults = {"p": 0.5}

    def value(self, f, **params):
        return erasure_norm(f, params.get("p", 0.5))


class MaxInfluence(Functional):
    name = "max-influence"

    def value(self, f, **params):
        return max(fourier_stats(f).influences)


class TriangleDensity(Functional):
    name = "triangle-density"
    element_kind = "set"

    def value(self, a, **params):
        return float(triangle_density(a))


class Doubling(Functional):
    name = "doubling"
    element_kind = "set"

    def value(self, a, **params):
        if a.size == 0:
            return -math.inf
        return float(doubling(a))


_ALL = [FeiRatio(), BsMinusSens(), LinsumMinusSqrtDeg(), Stab(), W1(), Tinf(),
        TinfOverSens(), Nicd(), Erasure(), MaxInfluence(), TriangleDensity(),
        Doubling()]
FUNCTIONALS = {f.name: f for f in _ALL}


def get_functional(name: str) -> Functional:
    try:
        return FUNCTIONALS[name]
    except KeyError:
        raise DomainError(
            f"unknown functional {name!r}; available: {sorted(FUNCTIONALS)}"
        ) from None
