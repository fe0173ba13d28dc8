"""Monte Carlo lab for Gaussian-space extremal questions.

Estimates are reproducible: counter-based substreams per batch, antithetic
pairing for symmetric regions, fixed merge order. All acceptance-style
comparisons use three standard errors.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, NumericError, PreconditionError
from .rng import normal_ppf, philox_generator

BATCH = 1 << 16
DEFAULT_SAMPLES = 1_000_000


# --- regions -------------------------------------------------------------------


class GaussianRegion:
    """Pure membership predicate over R^n."""

    n: int

    def contains(self, points: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class Halfspace(GaussianRegion):
    """{x : <v, x> >= theta} with |v| = 1 (checked to 1e-12)."""

    def __init__(self, v, theta: float = 0.0):
        v = np.asarray(v, dtype=np.float64)
        if abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise PreconditionError("halfspace normal must be a unit vector")
        self.v = v
        self.theta = float(theta)
        self.n = v.shape[0]

    def contains(self, points):
        return points @ self.v >= self.theta

    def to_dict(self):
        return {"type": "halfspace", "v": self.v.tolist(), "theta": self.theta}


class CenteredBall(GaussianRegion):
    def __init__(self, n: int, radius: float):
        if radius < 0:
            raise DomainError("radius must be nonnegative")
        self.n = n
        self.radius = float(radius)

    def contains(self, points):
        return (points * points).sum(axis=1) <= self.radius**2

    def to_dict(self):
        return {"type": "ball", "n": self.n, "radius": self.radius}


class Complement(GaussianRegion):
    def __init__(self, inner: GaussianRegion):
        self.inner = inner
        self.n = inner.n

    def contains(self, points):
        return ~self.inner.contains(points)

    def to_dict(self):
        return {"type": "complement", "inner": self.inner.to_dict()}


class Intersection(GaussianRegion):
    """Intersection of finitely many regions (slab/sector constructor support)."""

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise DomainError("intersection needs at least one part")
        if len({p.n for p in parts}) != 1:
            raise DomainError("intersection parts must share dimension")
        self.parts = parts
        self.n = parts[0].n

    def contains(self, points):
        out = self.parts[0].contains(points)
        for p in self.parts[1:]:
            out &= p.contains(points)
        return out

    def to_dict(self):
        return {"type": "intersection", "parts": [p.to_dict() for p in self.parts]}


class SimplexCell(GaussianRegion):
    """{x : argmax_j <a_j, x> = i}, ties to the lowest index."""

    def __init__(self, index: int, vectors):
        vectors = np.asarray(vectors, dtype=np.float64)
        q, n = vectors.shape
        if not 0 <= index < q:
            raise DomainError("cell index out of range")
        if q < 2:
            raise DomainError("need at least two cell vectors")
        norms = np.linalg.norm(vectors, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise PreconditionError("simplex vectors must be unit")
        target = -1.0 / (q - 1)
        gram = vectors @ vectors.T
        off = gram[~np.eye(q, dtype=bool)]
        if np.max(np.abs(off - target)) > 1e-9:
            raise PreconditionError("pairwise inner products must equal -1/(q-1)")
        self.index = index
        self.vectors = vectors
        self.n = n

    def contains(self, points):
        dots = points @ self.vectors.T
        return np.argmax(dots, axis=1) == self.index

    def to_dict(self):
        return {"type": "simplex", "index": self.index,
                "vectors": self.vectors.tolist()}


def region_from_dict(d: dict) -> GaussianRegion:
    kind = d["type"]
    if kind == "halfspace":
        return Halfspace(d["v"], d["theta"])
    if kind == "ball":
        return CenteredBall(d["n"], d["radius"])
    if kind == "complement":
        return Complement(region_from_dict(d["inner"]))
    if kind == "intersection":
        return Intersection([region_from_dict(p) for p in d["parts"]])
    if kind == "simplex":
        return SimplexCell(d["index"], d["vectors"])
    raise DomainError(f"unknown region type {kind!r}")


def simplex_vectors(q: int, n: int) -> np.ndarray:
    """q unit vectors in R^n with pairwise inner products -1/(q-1)."""
    if q < 2 or n < q - 1:
        raise DomainError("need n >= q-1 >= 1")
    scale = math.sqrt(q / (q - 1))
    raw = scale * (np.eye(q) - np.full((q, q), 1.0 / q))
    # deterministic orthonormal basis of the sum-zero hyperplane in R^q
    basis = []
    for i in range(q - 1):
        v = np.zeros(q)
        v[i] = 1.0
        v[q - 1] = -1.0
        for b in basis:
            v -= (v @ b) * b
        v /= np.linalg.norm(v)
        basis.append(v)
    coords = raw @ np.stack(basis, axis=1)  # q x (q-1)
    out = np.zeros((q, n))
    out[:, : q - 1] = coords
    # renormalize away the last float ulps so the constructor check passes
    out /= np.linalg.norm(out, axis=1)[:, None]
    return out


# --- estimates -----------------------------------------------------------------


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    samples: int
    seed: int

    def csv_row(self) -> str:
        return f"{self.value!r},{self.std_error!r},{self.samples},{self.seed}"

    def within(self, target: float, k: float = 3.0) -> bool:
        return abs(self.value - target) <= k * self.std_error


def _gaussian_batch(seed, stream, count, n):
    raw = philox_generator(seed, stream).bit_generator.random_raw(count * n)
    u = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * (2.0**-53)
    return normal_ppf(u).reshape(count, n)


def correlated_pair_batches(n, rho, samples, seed, batch=BATCH):
    """Yield (x, y) batches with y = rho x + sqrt(1-rho^2) z, deterministically."""
    if not -1.0 <= rho <= 1.0:
        raise DomainError("rho must lie in [-1, 1]")
    root = math.sqrt(max(0.0, 1.0 - rho * rho))
    done = 0
    stream = 0
    while done < samples:
        m = min(batch, samples - done)
        x = _gaussian_batch(seed, 2 * stream, m, n)
        z = _gaussian_batch(seed, 2 * stream + 1, m, n)
        yield x, rho * x + root * z
        done += m
        stream += 1


def correlated_pairs(n, rho, samples, seed):
    """Stream of individual (x, y) sample pairs."""
    for x, y in correlated_pair_batches(n, rho, samples, seed):
        for i in range(x.shape[0]):
            yield x[i], y[i]


def _mc_from_moments(total, total_sq, m, seed):
    mean = total / m
    var = max(0.0, total_sq / m - mean * mean)
    return McEstimate(mean, math.sqrt(var / m), m, seed)


def joint_prob(
    a: GaussianRegion,
    b: GaussianRegion,
    rho: float,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    antithetic: bool = True,
    symmetrized: bool = False,
) -> McEstimate:
    """Pr[x in A, y in B] for rho-correlated Gaussian pairs.

    Antithetic pairing ((x,y) vs (-x,-y)) cancels variance exactly on
    centrally symmetric regions; symmetrized additionally averages the
    swapped-role estimator so joint_prob(A,B) == joint_prob(B,A) exactly.
    """
    if a.n != b.n:
        raise DomainError("regions must share dimension")
    if samples <= 0:
        raise DomainError("need at least one sample")
    total = 0.0
    total_sq = 0.0
    for x, y in correlated_pair_batches(a.n, rho, samples, seed):
        w = (a.contains(x) & b.contains(y)).astype(np.float64)
        if antithetic:
            w = 0.5 * (w + (a.contains(-x) & b.contains(-y)).astype(np.float64))
        if symmetrized:
            w2 = (b.contains(x) & a.contains(y)).astype(np.float64)
            if antithetic:
                w2 = 0.5 * (w2 + (b.contains(-x) & a.contains(-y)).astype(np.float64))
            w = 0.5 * (w + w2)
        total += float(w.sum())
        total_sq += float((w * w).sum())
    return _mc_from_moments(total, total_sq, samples, seed)


def check_partition(cells, n, seed: int = 987, points: int = 10_000):
    """Spot-check disjointness+exhaustiveness on seeded sample points."""
    x = _gaussian_batch(seed, 0, points, n)
    counts = np.zeros(points, dtype=np.int64)
    for cell in cells:
        counts += cell.contains(x)
    bad = np.nonzero(counts != 1)[0]
    if len(bad):
        raise PreconditionError(
            f"not a partition at sample point {x[bad[0]].tolist()} "
            f"(covered {int(counts[bad[0]])} times)"
        )


def partition_stability(
    cells,
    rho: float,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> McEstimate:
    """sum_i Pr[x in A_i, y in A_i] for a partition of R^n."""
    if not cells:
        raise DomainError("need at least one cell")
    n = cells[0].n
    if any(c.n != n for c in cells):
        raise DomainError("cells must share dimension")
    if samples <= 0:
        raise DomainError("need at least one sample")
    check_partition(cells, n)
    total = 0.0
    total_sq = 0.0
    for x, y in correlated_pair_batches(n, rho, samples, seed):
        w = np.zeros(x.shape[0])
        for cell in cells:
            w += (cell.contains(x) & cell.contains(y)).astype(np.float64)
        total += float(w.sum())
        total_sq += float((w * w).sum())
    return _mc_from_moments(total, total_sq, samples, seed)


# --- widths ---------------------------------------------------------------------


@dataclass(frozen=True)
class WidthsResult:
    b: object  # float (exact) or McEstimate
    g: McEstimate
    b_exact: bool


def widths(vectors, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> WidthsResult:
    """b(T) = E_{x~{-1,1}^n} max_t <t,x> (exact for n <= 24) and the Gaussian
    analogue g(T) by Monte Carlo."""
    T = np.asarray(vectors, dtype=np.float64)
    if T.ndim != 2 or T.shape[0] == 0:
        raise DomainError("T must be a nonempty list of vectors")
    n = T.shape[1]
    if n <= 24:
        total = 0.0
        for start in range(0, 1 << n, BATCH):
            stop = min(start + BATCH, 1 << n)
            idx = np.arange(start, stop, dtype=np.int64)
            signs = 1.0 - 2.0 * ((idx[:, None] >> np.arange(n)[None, :]) & 1)
            total += float((signs @ T.T).max(axis=1).sum())
        b = total / (1 << n)
        b_exact = True
    else:
        tot = 0.0
        tot_sq = 0.0
        done = 0
        stream = 0
        while done < samples:
            m = min(BATCH, samples - done)
            raw = philox_generator(seed, 2**32 + stream).bit_generator.random_raw(m * n)
            signs = 1.0 - 2.0 * (raw.reshape(m, n) & 1).astype(np.float64)
            vals = (signs @ T.T).max(axis=1)
            tot += float(vals.sum())
            tot_sq += float((vals * vals).sum())
            done += m
            stream += 1
        b = _mc_from_moments(tot, tot_sq, samples, seed)
        b_exact = False
    tot = 0.0
    tot_sq = 0.0
    done = 0
    stream = 0
    while done < samples:
        m = min(BATCH, samples - done)
        x = _gaussian_batch(seed, 2**33 + stream, m, n)
        vals = (x @ T.T).max(axis=1)
        tot += float(vals.sum())
        tot_sq += float((vals * vals).sum())
        done += m
        stream += 1
    g = _mc_from_moments(tot, tot_sq, samples, seed)
    return WidthsResult(b, g, b_exact)


# --- ball radius ------------------------------------------------------------------


def _chi_pdf(r: float, n: int) -> float:
    return (
        r ** (n - 1)
        * math.exp(-0.5 * r * r)
        / (2.0 ** (n / 2.0 - 1.0) * math.gamma(n / 2.0))
    )


def ball_radius(n: int, mu: float) -> float:
    """Radius r with Pr[|Z| <= r] = mu for standard n-dim Gaussian Z.

    Bisection on the chi CDF computed by adaptive quadrature; the achieved
    measure is within 1e-10 of mu or a NumericError is raised (200-step cap).
    """
    if not 0.0 < mu < 1.0:
        raise DomainError("mu must lie in (0, 1)")

    def cdf(r):
        val, _ = quad(_chi_pdf, 0.0, r, args=(n,), epsabs=1e-13, epsrel=1e-13, limit=200)
        return val

    lo, hi = 0.0, math.sqrt(n) + 1.0
    while cdf(hi) < mu:
        hi *= 2.0
        if hi > 1e6:
            raise NumericError("ball radius bracket failed")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val = cdf(mid)
        if abs(val - mu) <= 1e-10:
            return mid
        if val < mu:
            lo = mid
        else:
            hi = mid
    raise NumericError("ball radius bisection did not converge in 200 steps")
