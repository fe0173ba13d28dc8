"""Noise stability, the noise operator, agreement probabilities, erasures."""

import numpy as np

from . import kernels
from .bits import popcounts_upto
from .errors import CapacityError, DomainError, PreconditionError
from .function import BooleanFunction, RealHypercubeFunction
from .spectrum import Spectrum, wht

ERASURE_MAX_N = 14


def stability_polynomial(f: BooleanFunction):
    """Level weights W_k = sum_{|S|=k} fhat(S)^2 as floats (exact int ratios)."""
    spec = wht(f)
    four_n = 1 << (2 * f.n)
    return [w / four_n for w in spec.level_weights_exact()]


def stability(f: BooleanFunction, rho: float) -> float:
    if not -1 <= rho <= 1:
        raise DomainError("rho must lie in [-1, 1]")
    weights = stability_polynomial(f)
    return _eval_poly(weights, rho)


def _eval_poly(weights, rho):
    acc = 0.0
    for k in range(len(weights) - 1, -1, -1):
        acc = acc * rho + weights[k]
    return acc


def noise_profile(f: BooleanFunction, grid):
    """[(rho, Stab_rho[f], NS_(1-rho)/2[f])] evaluated from the level weights."""
    weights = stability_polynomial(f)
    out = []
    for rho in grid:
        if not -1 <= rho <= 1:
            raise DomainError("rho must lie in [-1, 1]")
        stab = _eval_poly(weights, rho)
        out.append((rho, stab, 0.5 - 0.5 * stab))
    return out


def noise_operator(f: RealHypercubeFunction | BooleanFunction, rho: float) -> RealHypercubeFunction:
    """T_rho f: scales level-k Fourier mass by rho^k."""
    if isinstance(f, BooleanFunction):
        f = f.to_real()
    spec = wht(f)
    pc = popcounts_upto(1 << f.n)
    scaled = spec.coeffs * np.power(rho, pc)
    buf = scaled.astype(np.float64)
    kernels.wht_inplace(buf)
    return RealHypercubeFunction(f.n, buf / (1 << f.n))


def tail_mass(g: RealHypercubeFunction, t: float) -> float:
    """Uniform measure of {x : g(x) >= t}."""
    return float((g.table >= t).mean())


def convolution_tail(f: RealHypercubeFunction, rho: float, t: float) -> float:
    """Pr[T_rho f >= t] for nonnegative f with E[f] = 1 (checked)."""
    if not 0 < rho < 1:
        raise DomainError("rho must lie in (0, 1)")
    if np.any(f.table < 0):
        raise PreconditionError("f must be nonnegative")
    if abs(f.mean() - 1.0) > 1e-12:
        raise PreconditionError("f must have E[f] = 1 (tolerance 1e-12)")
    return tail_mass(noise_operator(f, rho), t)


def nicd_agreement(f: BooleanFunction, r: int, eps: float) -> float:
    """Pr[f(y1) = ... = f(yr)] for r independent eps-noisy copies of a
    common uniform x: E_x[p(x)^r + (1-p(x))^r], p = (1 + T_(1-2eps)f)/2."""
    if r < 2:
        raise DomainError("need r >= 2 players")
    if not 0 < eps < 0.5:
        raise DomainError("eps must lie in (0, 1/2)")
    tf = noise_operator(f, 1.0 - 2.0 * eps).table
    p = 0.5 * (1.0 + tf)
    return float((p**r + (1.0 - p) ** r).mean())


def nicd_agreement_batch(tables: np.ndarray, n: int, r: int, eps: float) -> np.ndarray:
    """nicd_agreement for many functions at once; tables is (m, 2^n) +-1."""
    if not 0 < eps < 0.5:
        raise DomainError("eps must lie in (0, 1/2)")
    rho = 1.0 - 2.0 * eps
    buf = tables.astype(np.float64)
    kernels.wht_inplace(buf)
    buf *= np.power(rho, popcounts_upto(1 << n))[None, :]
    kernels.wht_inplace(buf)
    buf /= 1 << n
    p = 0.5 * (1.0 + buf)
    return (p**r + (1.0 - p) ** r).mean(axis=1)


def erasure_norm(f: BooleanFunction, p: float) -> float:
    """E_z |f(z)| where z_i is +-1 with probability p/2 each and 0 otherwise,
    f extended multilinearly. Exact 3^n enumeration via coordinate recursion."""
    if not 0 < p <= 1:
        raise DomainError("p must lie in (0, 1]")
    if f.n > ERASURE_MAX_N:
        raise CapacityError(f"erasure norm capped at n = {ERASURE_MAX_N}")
    return kernels.erasure_expectation(f.table.astype(np.float64), p)
