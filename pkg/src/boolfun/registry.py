"""Conjecture registry: one executable recipe per catalogued open problem.

Every recipe computes the quantities its problem is stated in terms of, at
a fixed small scale, and returns (verdict, metrics, witness). Asymptotic
statements are never "proved" here; a holds-at-scale verdict means the
checked instances passed, counterexample means a concrete violating object
was found (and is persisted for re-verification), report-only means the
problem only admits measurement.
"""

import math
from fractions import Fraction

import numpy as np

from .bits import popcounts_upto
from .errors import DomainError
from .f2n import (
    Density,
    F2Set,
    PatternSystem,
    density_bias,
    doubling,
    fooling_error,
    freeness_check,
    freeness_tester_estimate,
    max_correlation_low_degree,
    quadratic_span_min_terms,
    subspace_in_set,
    sumset,
    triangle_count,
    triangle_density,
    triangle_removal_distance,
)
from .function import BooleanFunction, Dnf, dictator, ip, majority, mod3, parity
from .gaussian import (
    CenteredBall,
    Complement,
    Halfspace,
    Intersection,
    SimplexCell,
    ball_radius,
    joint_prob,
    partition_stability,
    simplex_vectors,
    widths,
)
from .noise import (
    convolution_tail,
    erasure_norm,
    nicd_agreement_batch,
    noise_operator,
    noise_profile,
    stability,
)
from .report import (
    VERDICT_COUNTEREXAMPLE,
    VERDICT_HOLDS,
    VERDICT_REPORT_ONLY,
    Report,
    Timer,
)
from .rng import gaussians, philox_generator
from .sensitivity import (
    count_strict_local_minima,
    is_monotone,
    junta_distance,
    sensitivity_stats,
)
from .spaces import AllFunctions, Ltfs, MonotoneFunctions, OddFunctions
from .spectrum import fourier_stats, spectral_concentration, wht
from .threshold import (
    LtfSpec,
    approx_majority_min_degree,
    enumerate_ltfs,
    gl_extremal,
    intersect_halfspaces,
    ltf,
    ptf_degree,
    ptf_sparsity,
    threshold_tail,
)

REGISTRY = {}


def conjecture(cid, **defaults):
    def wrap(fn):
        REGISTRY[cid] = (fn, defaults)
        fn.conjecture_id = cid
        return fn
    return wrap


def run(conjecture_id: str, params: dict | None = None, seed: int = 0,
        out_path=None, workers: int | None = None) -> Report:
    """Execute a registered recipe and persist the Report (JSONL append)."""
    if conjecture_id not in REGISTRY:
        raise DomainError(
            f"unknown conjecture {conjecture_id!r}; available: {sorted(REGISTRY)}"
        )
    fn, defaults = REGISTRY[conjecture_id]
    merged = dict(defaults)
    merged.update(params or {})
    with Timer() as t:
        verdict, metrics, witness = fn(merged, seed=seed, workers=workers)
    report = Report(
        conjecture_id=conjecture_id,
        parameters=merged,
        verdict=verdict,
        metrics=metrics,
        witness=witness,
        seed=seed,
        wall_time_s=round(t.elapsed, 6),
    )
    if out_path is not None:
        report.append_to(out_path)
    return report


def function_witness(f: BooleanFunction, functional: str, value) -> dict:
    return {
        "kind": "function",
        "n": f.n,
        "hex": f.to_hex(),
        "functional": functional,
        "value": float(value),
    }


def reverify_witness(witness: dict) -> bool:
    """Recompute a persisted witness's functional value; exact match required."""
    from .functionals import get_functional

    if witness is None or witness.get("kind") != "function":
        return False
    f = BooleanFunction.from_hex(witness["n"], witness["hex"])
    params = witness.get("params", {})
    got = float(get_functional(witness["functional"]).value(f, **params))
    return got == witness["value"]


def _tinf_exact(f: BooleanFunction) -> Fraction:
    spec = wht(f)
    pc = popcounts_upto(1 << f.n)
    sq = spec.coeffs.astype(object) * spec.coeffs.astype(object)
    return Fraction(int((sq * pc).sum()), 1 << (2 * f.n))


# --- polynomial correlation ----------------------------------------------------


@conjecture("correlation-mod3", n=6, d=1)
def correlation_mod3(params, seed=0, workers=None):
    n, d = params["n"], params["d"]
    f = mod3(n)
    corr, poly = max_correlation_low_degree(f, d)
    metrics = {
        "n": n, "d": d,
        "max_correlation": float(corr),
        "smolensky_reference": 2 / 3,
        "witness_monomials": sorted(poly.monomials),
    }
    return VERDICT_REPORT_ONLY, metrics, None


# --- Rademacher tails ------------------------------------------------------------


@conjecture("tomaszewski-sharp")
def tomaszewski_sharp(params, seed=0, workers=None):
    s = 1 / math.sqrt(2)
    p1 = threshold_tail((s, s), 1.0)
    p2 = threshold_tail((0.5, 0.5, 0.5, 0.5), 1.0, strict=True)
    ok = p1 == Fraction(1, 2) and p2 == Fraction(3, 8)
    metrics = {
        "two_coord_tail": str(p1),
        "half_weights_strict_tail": str(p2),
        "expected": ["1/2", "3/8"],
    }
    return (VERDICT_HOLDS if ok else VERDICT_COUNTEREXAMPLE), metrics, None


@conjecture("tomaszewski-search", n=10, trials=200)
def tomaszewski_search(params, seed=0, workers=None):
    """Random unit vectors: is Pr[|<a,x>| <= 1] ever below 1/2?"""
    n, trials = params["n"], params["trials"]
    rng = philox_generator(seed, 0)
    worst = None
    worst_a = None
    for _ in range(trials):
        a = rng.normal(size=n)
        a /= np.linalg.norm(a)
        p = threshold_tail(tuple(a), 1.0)
        if worst is None or p < worst:
            worst, worst_a = p, a
    metrics = {"n": n, "trials": trials, "min_tail": float(worst),
               "min_tail_exact": str(worst), "bound": 0.5}
    verdict = VERDICT_HOLDS if worst >= Fraction(1, 2) else VERDICT_COUNTEREXAMPLE
    witness = None
    if verdict == VERDICT_COUNTEREXAMPLE:
        witness = {"kind": "vector", "a": [float(v) for v in worst_a],
                   "functional": "threshold-tail", "value": float(worst)}
    return verdict, metrics, witness


# --- Talagrand convolution --------------------------------------------------------


@conjecture("talagrand-search", n=8, rho=0.5, trials=64)
def talagrand_search(params, seed=0, workers=None):
    """sup_t t Pr[T_rho f >= t] over nonnegative mean-one test densities:
    subcube atoms of every codimension plus seeded random sparse densities."""
    n, rho, trials = params["n"], params["rho"], params["trials"]
    best = (0.0, None, None)
    candidates = []
    for d in range(n + 1):
        table = np.zeros(1 << n)
        mask = (1 << d) - 1
        idx = np.arange(1 << n)
        table[(idx & mask) == mask] = 1 << d
        candidates.append(("subcube-codim-%d" % d, table))
    rng = philox_generator(seed, 0)
    for t in range(trials):
        k = int(rng.integers(1, max(2, (1 << n) // 4)))
        support = rng.choice(1 << n, size=k, replace=False)
        weights = rng.random(k) + 1e-3
        table = np.zeros(1 << n)
        table[support] = weights
        table *= (1 << n) / table.sum()
        candidates.append((f"random-{t}", table))
    from .function import RealHypercubeFunction

    best_tail = (0.0, None, None)
    for name, table in candidates:
        f = RealHypercubeFunction(n, table)
        g = noise_operator(f, rho).table
        for t in np.unique(g[g > 1e-12]):
            mass = float((g >= t).mean())
            score = float(t) * mass
            if score > best[0]:
                best = (score, name, float(t))
            if t > 1.0 and score > best_tail[0]:
                best_tail = (score, name, float(t))
    metrics = {
        "n": n, "rho": rho,
        "max_t_times_tail": best[0], "argmax_density": best[1], "argmax_t": best[2],
        "max_t_times_tail_beyond_mean": best_tail[0],
        "argmax_density_beyond_mean": best_tail[1],
        "argmax_t_beyond_mean": best_tail[2],
    }
    return VERDICT_REPORT_ONLY, metrics, None


# --- sensitivity ------------------------------------------------------------------


@conjecture("sens-vs-bs", n=3)
def sens_vs_bs(params, seed=0, workers=None):
    n = params["n"]
    best_gap = -1
    best_f = None
    for f in AllFunctions(n).elements():
        st = sensitivity_stats(f)
        gap = st.block_sensitivity - st.max_sensitivity
        if gap > best_gap:
            best_gap, best_f = gap, f
    metrics = {"n": n, "max_bs_minus_sens": best_gap,
               "argmax_hex": best_f.to_hex()}
    witness = function_witness(best_f, "bs-minus-sens", float(best_gap))
    return VERDICT_REPORT_ONLY, metrics, witness


@conjecture("monotone-sensitivity", n=4)
def monotone_sensitivity(params, seed=0, workers=None):
    """Average vs max sensitivity over all monotone functions at fixed n."""
    n = params["n"]
    best = (-1.0, None, None)
    per_sens = {}
    for f in MonotoneFunctions(n).elements():
        st = sensitivity_stats(f, with_block=False)
        if st.max_sensitivity == 0:
            continue
        ratio = float(st.avg_sensitivity) / st.max_sensitivity
        if ratio > best[0]:
            best = (ratio, f, st)
        key = st.max_sensitivity
        if float(st.avg_sensitivity) > per_sens.get(key, (-1.0, ""))[0]:
            per_sens[key] = (float(st.avg_sensitivity), f.to_hex())
    ratio, f, st = best
    exponent = (
        math.log(float(st.avg_sensitivity)) / math.log(st.max_sensitivity)
        if st.max_sensitivity > 1 and st.avg_sensitivity > 0
        else None
    )
    metrics = {
        "n": n, "max_tinf_over_sens": ratio, "argmax_hex": f.to_hex(),
        "tinf": float(st.avg_sensitivity), "sens": st.max_sensitivity,
        "log_sens_exponent": exponent, "reference_exponent": 0.61,
        "max_tinf_by_sens": {str(k): v for k, v in sorted(per_sens.items())},
    }
    return VERDICT_REPORT_ONLY, metrics, None


@conjecture("monotone-junta", n=4)
def monotone_junta(params, seed=0, workers=None):
    """Distance of monotone functions to deg^2-juntas (resolved problem;
    measurement retained)."""
    n = params["n"]
    worst = (0.0, None, 0)
    for f in MonotoneFunctions(n).elements():
        st = fourier_stats(f)
        k = min(n, st.degree * st.degree) if st.degree else 0
        dist, _ = junta_distance(f, k)
        if float(dist) > worst[0]:
            worst = (float(dist), f, k)
    metrics = {"n": n, "max_distance": worst[0], "junta_size": worst[2],
               "argmax_hex": worst[1].to_hex() if worst[1] else None}
    return VERDICT_REPORT_ONLY, metrics, None


# --- Gotsman-Linial ----------------------------------------------------------------


@conjecture("gotsman-linial", n=3)
def gotsman_linial(params, seed=0, workers=None):
    """Exhaustive check at small n: does the alternating symmetric witness
    attain the maximum total influence among degree-<=k PTFs?"""
    n = params["n"]
    degrees = {}
    for f in AllFunctions(n).elements():
        degrees[f.table_int()] = ptf_degree(f)
    per_k = {}
    verdict = VERDICT_HOLDS
    witness = None
    for k in range(1, n + 1):
        best = Fraction(-1)
        best_f = None
        for v, deg in degrees.items():
            if deg <= k:
                f = BooleanFunction.from_table_int(n, v)
                ti = _tinf_exact(f)
                if ti > best:
                    best, best_f = ti, f
        gl_f, _ = gl_extremal(n, k)
        gl_tinf = _tinf_exact(gl_f)
        per_k[k] = {
            "max_tinf": float(best), "gl_tinf": float(gl_tinf),
            "attained": gl_tinf == best, "argmax_hex": best_f.to_hex(),
        }
        if gl_tinf != best:
            verdict = VERDICT_COUNTEREXAMPLE
            witness = function_witness(best_f, "tinf", float(best))
    metrics = {"n": n, "per_degree": per_k}
    return verdict, metrics, witness


@conjecture("holzman-minima", n=4, trials=500)
def holzman_minima(params, seed=0, workers=None):
    """Random degree-2 polynomials: count of strict local minima vs C(n, n/2)."""
    from .function import RealHypercubeFunction

    n, trials = params["n"], params["trials"]
    if n % 2:
        raise DomainError("Holzman bound is stated for even n")
    masks = [m for m in range(1 << n) if bin(m).count("1") <= 2]
    idx = np.arange(1 << n, dtype=np.int64)
    chi = np.stack(
        [1 - 2 * (np.bitwise_count((idx & m).astype(np.uint64)).astype(np.int64) & 1)
         for m in masks], axis=1
    ).astype(np.float64)
    best = (-1, None)
    for t in range(trials):
        coeffs = gaussians(seed, 100 + t, len(masks))
        g = RealHypercubeFunction(n, chi @ coeffs)
        c = count_strict_local_minima(g)
        if c > best[0]:
            best = (c, coeffs)
    bound = math.comb(n, n // 2)
    metrics = {"n": n, "trials": trials, "max_minima": best[0],
               "holzman_bound": bound, "bound_violated": best[0] > bound}
    verdict = VERDICT_COUNTEREXAMPLE if best[0] > bound else VERDICT_REPORT_ONLY
    witness = None
    if verdict == VERDICT_COUNTEREXAMPLE:
        witness = {"kind": "real-table", "n": n,
                   "coeffs": [float(v) for v in best[1]],
                   "functional": "strict-local-minima", "value": best[0]}
    return verdict, metrics, witness


# --- additive combinatorics -----------------------------------------------------------


@conjecture("pfr-doubling", n=8, trials=40, density=0.1)
def pfr_doubling(params, seed=0, workers=None):
    """Doubling constant vs greedy affine-subspace cover size on random sets."""
    n, trials, dens = params["n"], params["trials"], params["density"]
    rng = philox_generator(seed, 0)
    rows = []
    for _ in range(trials):
        member = rng.random(1 << n) < dens
        if not member.any():
            continue
        a = F2Set(n, member)
        c = float(doubling(a))
        cover = _greedy_affine_cover(a)
        rows.append({"doubling": c, "cover_pieces": cover, "size": a.size})
    worst = max(rows, key=lambda r: r["cover_pieces"] / max(r["doubling"], 1.0))
    metrics = {"n": n, "trials": len(rows), "worst_case": worst,
               "max_cover_pieces": max(r["cover_pieces"] for r in rows)}
    return VERDICT_REPORT_ONLY, metrics, None


def _greedy_affine_cover(a: F2Set) -> int:
    """Cover A by affine subspaces contained in A, largest-first (heuristic)."""
    remaining = a.member.copy()
    pieces = 0
    while remaining.any():
        live = F2Set(a.n, remaining)
        found = None
        for d in range(a.n, -1, -1):
            if (1 << d) > int(remaining.sum()):
                continue
            res = subspace_in_set(live, d, 1.0, node_budget=200_000)
            if res.subspace is not None:
                found = res.subspace
                break
        pts = found.points()
        remaining[pts] = False
        pieces += 1
    return pieces


@conjecture("triangle-removal", n=6, trials=30, density=0.35)
def triangle_removal(params, seed=0, workers=None):
    """Removal distance vs triangle density on random sets: records the pairs
    (eps, density) that any poly(eps) bound must dominate."""
    n, trials, dens = params["n"], params["trials"], params["density"]
    rng = philox_generator(seed, 0)
    mode = "exact" if n <= 6 else "greedy"
    rows = []
    for _ in range(trials):
        member = rng.random(1 << n) < dens
        a = F2Set(n, member)
        removed = triangle_removal_distance(a, mode)
        eps = removed / (1 << n)
        td = triangle_density(a)
        rows.append((eps, float(td)))
    positive = [r for r in rows if r[0] > 0]
    metrics = {
        "n": n, "trials": trials, "mode": mode,
        "max_eps": max((r[0] for r in rows), default=0.0),
        "min_density_over_eps3": min(
            (r[1] / r[0] ** 3 for r in positive), default=None
        ),
        "pairs": rows[:10],
    }
    return VERDICT_REPORT_ONLY, metrics, None


@conjecture("subspace-sumset", n=8, eta=1.0)
def subspace_sumset(params, seed=0, workers=None):
    """Hamming-ball obstruction: largest d with a (fraction-eta) affine
    subspace inside A+A, A = {|x| <= n/2 - sqrt(n)}."""
    n, eta = params["n"], params["eta"]
    radius = int(n / 2 - math.sqrt(n))
    pc = popcounts_upto(1 << n)
    a = F2Set(n, pc <= radius)
    aa = sumset(a, a)
    best = None
    for d in range(n, -1, -1):
        res = subspace_in_set(aa, d, eta, node_budget=5_000_000)
        if res.subspace is not None:
            best = (d, res.exhaustive)
            break
    metrics = {
        "n": n, "ball_radius": radius, "eta": eta,
        "sumset_density": float(Fraction(aa.size, 1 << n)),
        "max_subspace_dim": best[0] if best else -1,
        "codimension": n - best[0] if best else n,
        "exhaustive": best[1] if best else True,
        "sqrt_n": math.sqrt(n),
    }
    return VERDICT_REPORT_ONLY, metrics, None


@conjecture("bgs-freeness", n=6, samples=100_000)
def bgs_freeness(params, seed=0, workers=None):
    """Sampled rejection rates vs exact pattern counts for small systems."""
    n, samples = params["n"], params["samples"]
    rng = philox_generator(seed, 0)
    member = rng.random(1 << n) < 0.3
    a = F2Set(n, member)
    systems = {
        "triangle": PatternSystem(3, (0b111,), (1, 1, 1)),
        "pair": PatternSystem(2, (0b11,), (1, 1)),
        "quad-rank2": PatternSystem(4, (0b0111, 0b1011), (1, 1, 1, 1)),
    }
    per = {}
    for name, p in systems.items():
        free, _ = freeness_check(a, p)
        est = freeness_tester_estimate(a, p, samples, seed)
        per[name] = {
            "free": free, "sampled_rate": est.rate,
            "ci": [est.ci_low, est.ci_high],
            "one_sided_ok": (not free) or est.rate == 0.0,
        }
    metrics = {"n": n, "samples": samples, "systems": per}
    return VERDICT_REPORT_ONLY, metrics, None


@conjecture("biased-dnf", n=10, support=64, terms=8, width=3, trials=10)
def biased_dnf(params, seed=0, workers=None):
    """Bias of random small-support densities vs their fooling error on
    random DNFs (random-search construction only)."""
    n, support, terms, width, trials = (
        params["n"], params["support"], params["terms"], params["width"],
        params["trials"],
    )
    rng = philox_generator(seed, 0)
    best_bias = None
    best_phi = None
    for _ in range(trials):
        pts = rng.integers(0, 1 << n, size=support)
        phi = Density.uniform_on(n, [int(p) for p in pts])
        b = density_bias(phi)
        if best_bias is None or b < best_bias:
            best_bias, best_phi = b, phi
    errs = []
    for t in range(trials):
        trm = []
        for _ in range(terms):
            vars_ = rng.choice(n, size=width, replace=False)
            pos = 0
            neg = 0
            for v in vars_:
                if rng.integers(2):
                    pos |= 1 << int(v)
                else:
                    neg |= 1 << int(v)
            trm.append((pos, neg))
        f = Dnf(n, tuple(trm)).to_function()
        spec = wht(f)
        l1 = float(np.abs(spec.fhat_dense()).sum())
        errs.append({"fooling_error": fooling_error(f, best_phi),
                     "bias_times_l1": best_bias * l1})
    metrics = {
        "n": n, "support": support, "best_bias": best_bias,
        "max_fooling_error": max(e["fooling_error"] for e in errs),
        "spectral_bound_ok": all(
            e["fooling_error"] <= e["bias_times_l1"] + 1e-9 for e in errs
        ),
    }
    return VERDICT_REPORT_ONLY, metrics, None


@conjecture("quadratic-uncertainty", n=3)
def quadratic_uncertainty(params, seed=0, workers=None):
    n = params["n"]
    m, coeffs, polys = quadratic_span_min_terms(n)
    metrics = {
        "n": n, "min_terms": m, "claimed_lower_bound": n,
        "meets_claim": m >= n,
        "witness_polys": [sorted(p.monomials) for p in polys],
        "witness_coeffs": [str(c) for c in coeffs],
    }
    return VERDICT_REPORT_ONLY, metrics, None


# --- DNF spectrum -----------------------------------------------------------------


@conjecture("mansour-dnf", n=8, terms=6, width=3, eps=0.1, trials=20)
def mansour_dnf(params, seed=0, workers=None):
    n, s, w, eps, trials = (params["n"], params["terms"], params["width"],
                            params["eps"], params["trials"])
    rng = philox_generator(seed, 0)
    worst = 0
    sizes = []
    for _ in range(trials):
        trm = []
        for _ in range(s):
            vars_ = rng.choice(n, size=w, replace=False)
            pos = 0
            neg = 0
            for v in vars_:
                if rng.integers(2):
                    pos |= 1 << int(v)
                else:
                    neg |= 1 << int(v)
            trm.append((pos, neg))
        f = Dnf(n, tuple(trm)).to_function()
        size, _ = spectral_concentration(f, eps)
        sizes.append(size)
        worst = max(worst, size)
    bound = s ** math.log2(1 / eps)
    metrics = {
        "n": n, "terms": s, "eps": eps, "trials": trials,
        "max_family_size": worst, "mean_family_size": float(np.mean(sizes)),
        "s_pow_log_inv_eps": bound, "within_bound": worst <= bound,
    }
    return VERDICT_REPORT_ONLY, metrics, None


# --- Bernoulli widths ----------------------------------------------------------------


@conjecture("bernoulli-widths", n=6, vectors=12, trials=10, samples=200_000)
def bernoulli_widths(params, seed=0, workers=None):
    n, m, trials, samples = (params["n"], params["vectors"], params["trials"],
                             params["samples"])
    rows = []
    for t in range(trials):
        T = gaussians(seed, 500 + t, m * n).reshape(m, n)
        res = widths(T, samples=samples, seed=seed + t)
        b = res.b if res.b_exact else res.b.value
        rows.append({"b": float(b), "g": res.g.value,
                     "g_over_b": res.g.value / b if b else None})
    ratios = [r["g_over_b"] for r in rows if r["g_over_b"]]
    metrics = {"n": n, "vectors": m, "trials": trials,
               "max_g_over_b": max(ratios), "rows": rows[:5]}
    return VERDICT_REPORT_ONLY, metrics, None


# --- Fourier entropy ------------------------------------------------------------------


@conjecture("fei-exhaustive", n=3)
def fei_exhaustive(params, seed=0, workers=None):
    from .search import extremal_search
    from .spaces import AllFunctions as AF

    n = params["n"]
    out = extremal_search(AF(n), "fei-ratio", "max", workers=workers)
    f = BooleanFunction.from_hex(n, out.witness_hex)
    st = fourier_stats(f)
    metrics = {
        "n": n, "max_ratio": out.value, "argmax_hex": out.witness_hex,
        "argmax_entropy": st.spectral_entropy,
        "argmax_tinf": st.total_influence,
        "min_entropy_gap": st.max_coeff_sq - 2.0 ** (-out.value * st.total_influence),
        "functions_scanned": out.evaluated,
    }
    witness = function_witness(f, "fei-ratio", out.value)
    return VERDICT_REPORT_ONLY, metrics, witness


# --- majority stability ----------------------------------------------------------------


@conjecture("mls-ltf", n=3, rho_grid=None)
def mls_ltf(params, seed=0, workers=None):
    """Majority-least-stable over the complete LTF set at odd n."""
    n = params["n"]
    grid = params["rho_grid"] or [round(0.1 * k, 1) for k in range(1, 10)]
    if n % 2 == 0:
        raise DomainError("majority needs odd n")
    fns = enumerate_ltfs(n)
    maj = majority(n)
    maj_stab = {rho: stability(maj, rho) for rho in grid}
    worst = (math.inf, None, None)
    biased_violation = None
    for f in fns:
        for rho in grid:
            slack = stability(f, rho) - maj_stab[rho]
            if slack < worst[0]:
                worst = (slack, f, rho)
    verdict = VERDICT_HOLDS if worst[0] >= -1e-12 else VERDICT_COUNTEREXAMPLE
    witness = None
    if verdict == VERDICT_COUNTEREXAMPLE:
        f = worst[1]
        biased_violation = abs(fourier_stats(f).mean) > 1e-12
        witness = function_witness(f, "stab", stability(f, worst[2]))
        witness["params"] = {"rho": worst[2]}
    metrics = {
        "n": n, "ltf_count": len(fns), "rho_grid": grid,
        "min_slack": worst[0], "argmin_rho": worst[2],
        "maj_stab": maj_stab,
        "violator_is_biased": biased_violation,
    }
    return verdict, metrics, witness


@conjecture("w1-unbiased-ltf", n=5)
def w1_unbiased_ltf(params, seed=0, workers=None):
    """min sum fhat(i)^2 over unbiased LTFs; 1/2 is proved, 2/pi conjectured."""
    n = params["n"]
    fns = enumerate_ltfs(n)
    best = (math.inf, None)
    count = 0
    for f in fns:
        spec = wht(f)
        if int(spec.coeffs[0]) != 0:
            continue
        count += 1
        w1 = float(
            sum(Fraction(int(spec.coeffs[1 << i])) ** 2 for i in range(n))
            / (1 << (2 * n))
        )
        if w1 < best[0]:
            best = (w1, f)
    two_over_pi = 2 / math.pi
    metrics = {
        "n": n, "unbiased_ltfs": count, "min_w1": best[0],
        "argmin_hex": best[1].to_hex(),
        "proved_bound": 0.5, "conjectured_bound": two_over_pi,
        "gap_to_two_over_pi": best[0] - two_over_pi,
        "meets_proved_bound": best[0] >= 0.5 - 1e-12,
    }
    verdict = VERDICT_HOLDS if metrics["meets_proved_bound"] else VERDICT_COUNTEREXAMPLE
    witness = None
    if verdict == VERDICT_COUNTEREXAMPLE:
        witness = function_witness(best[1], "w1", best[0])
    return verdict, metrics, witness


# --- NICD -----------------------------------------------------------------------------


@conjecture("nicd-multi", r=10, n=5, eps=0.26)
def nicd_multi(params, seed=0, workers=None):
    """Agreement maximizers over all odd functions; flags where the optimum
    sits relative to dictators and full majority."""
    r, n, eps = int(params["r"]), params["n"], params["eps"]
    space = OddFunctions(n)
    best = (-1.0, None)
    for _, tables in space.batches(1 << 14):
        vals = nicd_agreement_batch(tables, n, r, eps)
        i = int(np.argmax(vals))
        ties = np.nonzero(vals == vals[i])[0]
        for j in ties:
            f = BooleanFunction(n, tables[j])
            if vals[j] > best[0] or (vals[j] == best[0] and f.to_hex() < best[1].to_hex()):
                best = (float(vals[j]), f)
    f = best[1]
    dict_tables = {dictator(n, i).to_hex() for i in range(n)}
    dict_tables |= {dictator(n, i).negate().to_hex() for i in range(n)}
    maj_tables = {majority(n).to_hex(), majority(n).negate().to_hex()}
    embedded = _embedded_majority_hexes(n)
    metrics = {
        "r": r, "n": n, "eps": eps,
        "max_agreement": best[0], "argmax_hex": f.to_hex(),
        "argmax_is_dictator": f.to_hex() in dict_tables,
        "argmax_is_full_majority": f.to_hex() in maj_tables,
        "argmax_is_embedded_majority": f.to_hex() in embedded,
        "dictator_agreement": (1 - eps) ** r + eps**r,
        "functions_scanned": space.size(),
    }
    witness = function_witness(f, "nicd", best[0])
    witness["params"] = {"r": r, "eps": eps}
    return VERDICT_REPORT_ONLY, metrics, witness


def _embedded_majority_hexes(n: int):
    """Majorities on every odd-size coordinate subset, up to global sign."""
    import itertools as it

    out = set()
    idx = np.arange(1 << n, dtype=np.int64)
    for k in range(1, n + 1, 2):
        for combo in it.combinations(range(n), k):
            ones = sum(((idx >> i) & 1) for i in combo)
            table = np.where(ones < k / 2, 1, -1).astype(np.int8)
            out.add(BooleanFunction(n, table).to_hex())
            out.add(BooleanFunction(n, -table).to_hex())
    return out


@conjecture("erasure-extremal", n=3, ps=None)
def erasure_extremal(params, seed=0, workers=None):
    """E|f(z)| maximizers over odd functions for each erasure rate."""
    n = params["n"]
    ps = params["ps"] or [0.3, 0.5, 0.75, 0.9]
    space = OddFunctions(n)
    dict_hexes = {dictator(n, i).to_hex() for i in range(n)}
    dict_hexes |= {dictator(n, i).negate().to_hex() for i in range(n)}
    maj_hexes = {majority(n).to_hex(), majority(n).negate().to_hex()}
    per_p = {}
    for p in ps:
        best = (-1.0, None)
        for f in space.elements():
            v = erasure_norm(f, p)
            if v > best[0] + 1e-15 or (
                abs(v - best[0]) <= 1e-15 and f.to_hex() < best[1].to_hex()
            ):
                best = (v, f)
        per_p[str(p)] = {
            "max_value": best[0], "argmax_hex": best[1].to_hex(),
            "argmax_is_dictator": best[1].to_hex() in dict_hexes,
            "argmax_is_majority": best[1].to_hex() in maj_hexes,
        }
    metrics = {"n": n, "ps": ps, "per_p": per_p}
    return VERDICT_REPORT_ONLY, metrics, None


# --- intersections of halfspaces ---------------------------------------------------------


@conjecture("intersect-noise", n=8, k=3, delta=0.1, trials=12)
def intersect_noise(params, seed=0, workers=None):
    """Noise sensitivity of random halfspace intersections: union-bound
    sanity and the sqrt(log k) scaling question."""
    n, k, delta, trials = params["n"], params["k"], params["delta"], params["trials"]
    rng = philox_generator(seed, 0)
    rho = 1 - 2 * delta
    worst = None
    sane = True
    for _ in range(trials):
        specs = []
        while len(specs) < k:
            w = rng.integers(-7, 8, size=n)
            if not w.any():
                continue
            theta = int(rng.integers(-3, 4)) * 2 + (1 - int(w.sum()) % 2)
            try:
                specs.append(LtfSpec(tuple(int(v) for v in w), theta))
                ltf(specs[-1])
            except Exception:
                specs.pop()
        inter = intersect_halfspaces(specs)
        ns_inter = noise_profile(inter, [rho])[0][2]
        ns_parts = [noise_profile(ltf(s), [rho])[0][2] for s in specs]
        sane &= ns_inter <= sum(ns_parts) + 1e-12
        score = ns_inter / math.sqrt(delta)
        if worst is None or score > worst:
            worst = score
    metrics = {
        "n": n, "k": k, "delta": delta, "trials": trials,
        "max_ns_over_sqrt_delta": worst,
        "sqrt_log_k_reference": math.sqrt(math.log(k)),
        "union_bound_ok": sane,
    }
    return VERDICT_REPORT_ONLY, metrics, None


# --- linear coefficients -------------------------------------------------------------------


@conjecture("linear-vs-degree", n=4)
def linear_vs_degree(params, seed=0, workers=None):
    from .search import extremal_search
    from .spaces import AllFunctions as AF

    n = params["n"]
    out = extremal_search(AF(n), "linsum-minus-sqrtdeg", "max", workers=workers)
    verdict = VERDICT_HOLDS if out.value <= 1e-12 else VERDICT_COUNTEREXAMPLE
    f = BooleanFunction.from_hex(n, out.witness_hex)
    st = fourier_stats(f)
    metrics = {
        "n": n, "max_linsum_minus_sqrtdeg": out.value,
        "argmax_hex": out.witness_hex, "argmax_linear_sum": st.linear_sum,
        "argmax_degree": st.degree, "functions_scanned": out.evaluated,
    }
    witness = None
    if verdict == VERDICT_COUNTEREXAMPLE:
        witness = function_witness(f, "linsum-minus-sqrtdeg", out.value)
    return verdict, metrics, witness


# --- Aaronson-Ambainis -------------------------------------------------------------------


@conjecture("aaronson-ambainis", n=3)
def aaronson_ambainis(params, seed=0, workers=None):
    """Raw (max influence, variance, degree) triple at the worst ratio point
    over all Boolean functions at fixed n."""
    n = params["n"]
    worst = None
    for f in AllFunctions(n).elements():
        st = fourier_stats(f)
        if st.variance == 0 or st.degree == 0:
            continue
        score = max(st.influences) / (st.variance / st.degree)
        if worst is None or score < worst[0]:
            worst = (score, f, st)
    score, f, st = worst
    metrics = {
        "n": n, "min_maxinf_over_var_per_deg": score,
        "argmin_hex": f.to_hex(), "max_influence": max(st.influences),
        "variance": st.variance, "degree": st.degree,
    }
    return VERDICT_REPORT_ONLY, metrics, None


# --- Gaussian problems -------------------------------------------------------------------


@conjecture("symmetric-gaussian", n=2, rho=0.5, mu=0.5, nu=0.5, samples=200_000)
def symmetric_gaussian(params, seed=0, workers=None):
    """Compare candidate symmetric-A configurations against the Borell
    (unconstrained) opposing-halfspace minimum."""
    n, rho, mu, nu, samples = (params["n"], params["rho"], params["mu"],
                               params["nu"], params["samples"])
    e1 = np.zeros(n)
    e1[0] = 1.0
    r_mu = ball_radius(n, mu)
    r_nu_c = ball_radius(n, 1 - nu)
    q = _normal_quantile(1 - mu / 2)
    slab = Intersection([Halfspace(e1, -q), Complement(Halfspace(e1, q))])
    candidates = {
        "ball-vs-complement-ball": (CenteredBall(n, r_mu),
                                    Complement(CenteredBall(n, r_nu_c))),
        "ball-vs-ball": (CenteredBall(n, r_mu), CenteredBall(n, ball_radius(n, nu))),
        "slab-vs-complement-slab": (slab, Complement(slab)),
        "complement-ball-vs-ball": (Complement(CenteredBall(n, ball_radius(n, 1 - mu))),
                                    CenteredBall(n, ball_radius(n, nu))),
    }
    per = {}
    best = (math.inf, None)
    for name, (A, B) in candidates.items():
        est = joint_prob(A, B, rho, samples=samples, seed=seed)
        per[name] = {"value": est.value, "std_error": est.std_error}
        if est.value < best[0]:
            best = (est.value, name)
    h = Halfspace(e1, _normal_quantile(1 - mu))
    borell = joint_prob(h, Complement(Halfspace(e1, _normal_quantile(nu))), rho,
                        samples=samples, seed=seed)
    metrics = {
        "n": n, "rho": rho, "mu": mu, "nu": nu,
        "candidates": per, "min_candidate": best[1], "min_value": best[0],
        "borell_unconstrained": borell.value,
        "candidate_family_note": "ball/slab/complement families only",
    }
    return VERDICT_REPORT_ONLY, metrics, None


def _normal_quantile(p: float) -> float:
    from .rng import normal_ppf

    return float(normal_ppf(np.array([p]))[0])


@conjecture("simplex-stability", q=3, n=2, rho=0.5, samples=200_000, rivals=20)
def simplex_stability(params, seed=0, workers=None):
    """Standard simplex partition vs seeded rival equal-measure partitions."""
    q, n, rho, samples, rivals = (params["q"], params["n"], params["rho"],
                                  params["samples"], params["rivals"])
    cells = [SimplexCell(i, simplex_vectors(q, n)) for i in range(q)]
    simplex = partition_stability(cells, rho, samples=samples, seed=seed)
    beaten = []
    rng = philox_generator(seed, 3)
    results = {}
    for t in range(rivals):
        angle = float(rng.random() * 2 * math.pi)
        u = np.zeros(n)
        u[0], u[1] = math.cos(angle), math.sin(angle)
        v = np.zeros(n)
        v[0], v[1] = -math.sin(angle), math.cos(angle)
        if t % 2 == 0:
            parts = _slab_partition(u, q)
            kind = "slabs"
        else:
            parts = _flag_partition(u, v, q)
            kind = "flag"
        est = partition_stability(parts, rho, samples=samples, seed=seed + t + 1)
        results[f"{kind}-{t}"] = est.value
        if est.value > simplex.value + 3 * (est.std_error + simplex.std_error):
            beaten.append((kind, t, est.value))
    metrics = {
        "q": q, "n": n, "rho": rho,
        "simplex_stability": simplex.value,
        "simplex_std_error": simplex.std_error,
        "rival_max": max(results.values()),
        "simplex_beaten_beyond_3se": bool(beaten),
        "rivals": rivals,
    }
    verdict = VERDICT_COUNTEREXAMPLE if beaten else VERDICT_REPORT_ONLY
    return verdict, metrics, None


def _slab_partition(u, q):
    cuts = [_normal_quantile(k / q) for k in range(1, q)]
    parts = []
    for i in range(q):
        clauses = []
        if i > 0:
            clauses.append(Halfspace(u, cuts[i - 1]))
        if i < q - 1:
            clauses.append(Complement(Halfspace(u, cuts[i])))
        parts.append(Intersection(clauses) if len(clauses) > 1 else clauses[0])
    return parts


def _flag_partition(u, v, q):
    """One halfspace of measure 1/q; the rest sliced along v."""
    t = _normal_quantile(1 - 1 / q)
    first = Halfspace(u, t)
    rest = Complement(first)
    parts = [first]
    for k in range(1, q):
        # equal slices of the remaining mass along the independent direction
        lo_q = (k - 1) / (q - 1)
        hi_q = k / (q - 1)
        clauses = [rest]
        if lo_q > 0:
            clauses.append(Halfspace(v, _normal_quantile(lo_q)))
        if hi_q < 1:
            clauses.append(Complement(Halfspace(v, _normal_quantile(hi_q))))
        parts.append(Intersection(clauses))
    return parts


# --- PTF sparsity / approximate degree --------------------------------------------------


@conjecture("ip-sparsity", pairs=1)
def ip_sparsity(params, seed=0, workers=None):
    pairs = params["pairs"]
    f = ip(2 * pairs)
    m = ptf_sparsity(f)
    predicted = 3**pairs
    metrics = {"pairs": pairs, "bits": 2 * pairs, "min_sparsity": m,
               "conjectured_lower_bound": predicted,
               "meets_bound": m is not None and m >= predicted}
    verdict = (VERDICT_REPORT_ONLY if metrics["meets_bound"]
               else VERDICT_COUNTEREXAMPLE)
    witness = None
    if verdict == VERDICT_COUNTEREXAMPLE:
        witness = function_witness(f, "tinf", float(_tinf_exact(f)))
        witness["note"] = f"sparsity {m} below 3^{pairs}"
    return verdict, metrics, witness


@conjecture("approx-majority", n_max=10)
def approx_majority(params, seed=0, workers=None):
    n_max = params["n_max"]
    table = {}
    for n in range(1, n_max + 1):
        table[n] = approx_majority_min_degree(n, "symmetric")
    exact = {n: approx_majority_min_degree(n, "exact") for n in range(1, min(3, n_max) + 1)}
    metrics = {"symmetric_upper_bounds": table, "exact_small": exact}
    return VERDICT_REPORT_ONLY, metrics, None
