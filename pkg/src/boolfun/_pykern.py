"""Pure-Python (numpy) implementations of the hot kernels.

Mirrors the compiled extension boolfun._ckern operation for operation;
the two must stay numerically interchangeable (integer kernels exactly,
float kernels to the last bit, since both apply the same operations in
the same order).
"""

import numpy as np

IMPLEMENTATION = "pure"


def wht_i64(a):
    """In-place Walsh-Hadamard butterfly over an int64 vector of length 2^n."""
    return _wht(a)


def wht_f64(a):
    """In-place Walsh-Hadamard butterfly over a float64 vector of length 2^n."""
    return _wht(a)


def _wht(a):
    size = a.shape[-1]
    h = 1
    while h < size:
        v = a.reshape(a.shape[:-1] + (-1, 2, h))
        x = v[..., 0, :].copy()
        y = v[..., 1, :]
        v[..., 0, :] = x + y
        v[..., 1, :] = x - y
        h <<= 1
    return a


def triangle_pairs(member, elements):
    """Count ordered pairs (x, y) with x, y in A and x^y in A.

    member: uint8 membership table of length 2^n; elements: int64 indices
    of A. Deliberately a direct double loop with membership lookups, kept
    independent of the transform-based counting path.
    """
    total = 0
    for x in elements:
        total += int(member[np.bitwise_xor(elements, x)].sum())
    return total


def erasure_expectation(table, p):
    """E|f(z)| for z uniform-ish in {-1,0,1}^n: each z_i is +-1 w.p. p/2, 0 w.p. 1-p.

    table is the float64 value table of f's multilinear expansion on {-1,1}^n;
    recursion contracts one coordinate per level (3^n leaves).
    """
    half = 0.5 * p
    rest = 1.0 - p

    def rec(t):
        m = t.shape[0]
        if m == 1:
            return abs(t[0])
        h = m >> 1
        tp = t[:h]
        tm = t[h:]
        r0 = rec(tp)
        r1 = rec(tm)
        r2 = rec(0.5 * (tp + tm))
        return half * (r0 + r1) + rest * r2

    return float(rec(table))


def block_sensitivity(table, n):
    """Exact block sensitivity: max over x of the largest number of disjoint
    blocks B with f(x^B) != f(x).

    Per point: minimal sensitive blocks via an OR-zeta transform, then a
    memoized branch-and-bound packing. Exponential in n by nature.
    """
    size = 1 << n
    idx = np.arange(size)
    # singleton blocks give bs >= sens, a useful starting bound
    sens_counts = np.zeros(size, dtype=np.int64)
    for i in range(n):
        sens_counts += table != table[idx ^ (1 << i)]
    best = int(sens_counts.max())

    for x in range(size):
        diff = table[idx ^ x] != table[x]
        blocks = _minimal_true_masks(diff, n)
        if len(blocks) <= best:
            continue
        best = max(best, _max_disjoint(blocks, n, best))
    return best


def _minimal_true_masks(flag, n):
    """Masks B with flag[B] true and no proper subset true (flag[0] ignored)."""
    has = flag.copy()
    has[0] = False
    h = 1
    while h < has.shape[0]:
        v = has.reshape(-1, 2, h)
        v[:, 1, :] |= v[:, 0, :]
        h <<= 1
    proper = np.zeros_like(has)
    h = 1
    while h < has.shape[0]:
        vh = has.reshape(-1, 2, h)
        vp = proper.reshape(-1, 2, h)
        vp[:, 1, :] |= vh[:, 0, :]
        h <<= 1
    minimal = flag.copy()
    minimal[0] = False
    minimal &= ~proper
    return [int(b) for b in np.nonzero(minimal)[0]]


def _max_disjoint(blocks, n, floor):
    """Branch-and-bound maximum disjoint-subfamily size over bitmask blocks."""
    blocks = sorted(blocks, key=lambda b: bin(b).count("1"))
    sizes = [bin(b).count("1") for b in blocks]
    m = len(blocks)
    rest_union = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        rest_union[i] = rest_union[i + 1] | blocks[i]
    best = floor
    memo = {}

    def dfs(i, used, count):
        nonlocal best
        if count > best:
            best = count
        if i == m:
            return
        avail = rest_union[i] & ~used
        if count + bin(avail).count("1") // sizes[i] <= best:
            return
        key = (i, avail)
        prev = memo.get(key)
        if prev is not None and prev >= count:
            return
        memo[key] = count
        b = blocks[i]
        if not (b & used):
            dfs(i + 1, used | b, count + 1)
        dfs(i + 1, used, count)

    dfs(0, 0, 0)
    return best
