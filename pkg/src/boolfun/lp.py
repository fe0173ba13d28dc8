"""Linear-program feasibility with certified verdicts.

Sign-representation questions all reduce to: does A x >= 1 have a solution?
The fast path solves a box-normalized max-margin LP in floating point
(tolerance 1e-9). Verdicts are certified:

  * feasible  -> exact Fraction margin check of the returned point;
  * infeasible within 10x of tolerance (or on request) -> exact rational
    Phase-I simplex with Bland's rule, which is a proof either way.
"""

from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from .errors import LpError

FEAS_TOL = 1e-9


def max_margin(A):
    """max t s.t. A x >= t, x in [-1,1]^p, t in [-1,1].

    Returns (t_star, x). Feasibility of {A x >= 1} is equivalent to
    t_star > 0 (rescale x by 1/t).
    """
    A = np.asarray(A, dtype=np.float64)
    m, p = A.shape
    c = np.zeros(p + 1)
    c[p] = -1.0
    a_ub = np.hstack([-A, np.ones((m, 1))])
    bounds = [(-1.0, 1.0)] * (p + 1)
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(m), bounds=bounds, method="highs")
    if res.status != 0:
        raise LpError(f"margin LP failed with status {res.status}", residual=None)
    return float(-res.fun), res.x[:p]


def exact_min_margin(A, x):
    """min_i <A_i, x> with exact rational arithmetic (x floats convert exactly)."""
    xs = [Fraction(float(v)) for v in x]
    best = None
    for row in np.asarray(A):
        s = sum(Fraction(int(a)) * xv for a, xv in zip(row, xs) if a)
        if best is None or s < best:
            best = s
    return best


def solve_exact_feasibility(rows, rhs):
    """Find rational x with A x >= b, or None (proved infeasible).

    Dense Phase-I simplex over Fractions with Bland's rule; artificial
    variables never re-enter the basis. Exact, hence slow: meant for small
    certification problems, not bulk solving.
    """
    m = len(rows)
    p = len(rows[0]) if m else 0
    # equality form: [A | -A | -I] [u; v; s] = b, row-scaled so rhs >= 0
    ncols = 2 * p + m
    T = []
    basis = []
    for i in range(m):
        row = [Fraction(v) for v in rows[i]]
        bi = Fraction(rhs[i])
        sigma = -1 if bi < 0 else 1
        eq = [sigma * v for v in row] + [-sigma * v for v in row] + [Fraction(0)] * m
        eq[2 * p + i] = Fraction(-sigma)
        eq.append(sigma * bi)
        T.append(eq)
        basis.append(ncols + i)  # artificial i
    # objective row: minimize sum of artificials = sum(rhs) - sum(rows) . vars
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            obj[j] -= T[i][j]

    while True:
        enter = -1
        for j in range(ncols):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_ratio = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][ncols] / T[i][enter]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            # unbounded Phase-I cannot happen (objective bounded below by 0)
            raise LpError("phase-I ratio test failed", residual=None)
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter]:
                factor = T[i][enter]
                T[i] = [a - factor * b for a, b in zip(T[i], T[leave])]
        if obj[enter]:
            factor = obj[enter]
            obj = [a - factor * b for a, b in zip(obj, T[leave])]
        basis[leave] = enter

    infeas = -obj[ncols]
    if infeas > 0:
        return None
    x = [Fraction(0)] * p
    for i, b in enumerate(basis):
        if b < p:
            x[b] += T[i][ncols]
        elif b < 2 * p:
            x[b - p] -= T[i][ncols]
    return x


def min_violation(A):
    """min sum(z) s.t. A x + z >= 1, z >= 0. Zero iff {A x >= 1} is feasible;
    a positive optimum is a quantitative infeasibility residual."""
    A = np.asarray(A, dtype=np.float64)
    m, p = A.shape
    c = np.concatenate([np.zeros(p), np.ones(m)])
    a_ub = np.hstack([-A, -np.eye(m)])
    bounds = [(None, None)] * p + [(0, None)] * m
    res = linprog(c, A_ub=a_ub, b_ub=-np.ones(m), bounds=bounds, method="highs")
    if res.status != 0:
        raise LpError(f"violation LP failed with status {res.status}")
    return float(res.fun), res.x[:p]


def sign_feasibility(A, force_exact=False, tol=FEAS_TOL):
    """Certified feasibility of {x : A x >= 1} for an integer matrix A.

    Float verdicts stand when they are clear of the 10x-tolerance band
    (infeasible side) or pass an exact rational margin check (feasible
    side); anything ambiguous goes to the exact simplex, as does everything
    when force_exact is set. Returns (feasible, witness, info).
    """
    A = np.asarray(A)
    if not force_exact:
        resid, x0 = min_violation(A)
        info = {"residual": resid, "certified": "float"}
        if resid > 10 * tol:
            return False, None, info
        margin = exact_min_margin(A, x0)
        if margin > 0:
            info["certified"] = "exact-margin"
            return True, x0 / float(margin), info
        # push to an interior point before giving up on the float path
        t_star, x1 = max_margin(A)
        if t_star > 10 * tol:
            margin = exact_min_margin(A, x1)
            if margin > 0:
                info["certified"] = "exact-margin"
                info["margin"] = t_star
                return True, x1 / float(margin), info
    else:
        info = {}
    rows = [[int(v) for v in row] for row in A]
    sol = solve_exact_feasibility(rows, [1] * len(rows))
    info["certified"] = "exact-simplex"
    if sol is None:
        return False, None, info
    return True, np.array([float(v) for v in sol]), info


def band_feasibility(rows, lo, hi):
    """Exact feasibility of {x : lo_i <= <row_i, x> <= hi_i} (rational data).

    Two-sided constraints flatten to >= form; returns the rational point or
    None. Used by the approximate-majority and interpolation searches.
    """
    ge_rows = []
    ge_rhs = []
    for row, l, h in zip(rows, lo, hi):
        if l is not None:
            ge_rows.append(list(row))
            ge_rhs.append(l)
        if h is not None:
            ge_rows.append([-v for v in row])
            ge_rhs.append(-Fraction(h))
    return solve_exact_feasibility(ge_rows, ge_rhs)


def band_feasibility_float(rows, lo, hi):
    """Float screen for band_feasibility: feasibility via linprog (no margin)."""
    ge_rows = []
    ge_rhs = []
    for row, l, h in zip(rows, lo, hi):
        if l is not None:
            ge_rows.append([float(v) for v in row])
            ge_rhs.append(float(l))
        if h is not None:
            ge_rows.append([-float(v) for v in row])
            ge_rhs.append(-float(h))
    A = np.asarray(ge_rows)
    b = np.asarray(ge_rhs)
    p = A.shape[1]
    res = linprog(
        np.zeros(p),
        A_ub=-A,
        b_ub=-b,
        bounds=[(None, None)] * p,
        method="highs",
    )
    if res.status == 0:
        return res.x
    if res.status == 2:
        return None
    raise LpError(f"band LP failed with status {res.status}")
