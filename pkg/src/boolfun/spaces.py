"""Enumerable search spaces for the verification harness.

Every space enumerates its elements completely, duplicate-free and in a
fixed order (ascending truth-table integer for function spaces), so search
results are reproducible regardless of chunking or worker count.
"""

import numpy as np

from .bits import popcounts_upto
from .errors import CapacityError, DomainError
from .f2n import F2Set
from .function import BooleanFunction
from .rng import philox_generator

DEFAULT_BATCH = 4096


class FunctionSpace:
    """Ordered family of +-1 tables."""

    element_kind = "function"
    name: str
    n: int

    def size(self) -> int:
        raise NotImplementedError

    def tables_for_indices(self, idx: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def batches(self, batch: int = DEFAULT_BATCH):
        total = self.size()
        for start in range(0, total, batch):
            stop = min(start + batch, total)
            yield start, self.tables_for_indices(np.arange(start, stop, dtype=np.int64))

    def elements(self):
        for _, tables in self.batches():
            for row in tables:
                yield BooleanFunction(self.n, row)


class AllFunctions(FunctionSpace):
    """Every f: {-1,1}^n -> {-1,1}; index = truth-table integer."""

    def __init__(self, n: int):
        if n > 4:
            raise CapacityError("full function space enumerable only for n <= 4")
        self.n = n
        self.name = f"all-n{n}"

    def size(self) -> int:
        return 1 << (1 << self.n)

    def tables_for_indices(self, idx):
        size = 1 << self.n
        bits = (idx[:, None] >> np.arange(size, dtype=np.int64)[None, :]) & 1
        return (1 - 2 * bits).astype(np.int8)


class OddFunctions(FunctionSpace):
    """f(-x) = -f(x): free choice on the half-cube, 2^(2^(n-1)) members."""

    def __init__(self, n: int):
        if n > 5:
            raise CapacityError("odd function space enumerable only for n <= 5")
        self.n = n
        self.name = f"odd-n{n}"

    def size(self) -> int:
        return 1 << (1 << (self.n - 1))

    def tables_for_indices(self, idx):
        half = 1 << (self.n - 1)
        bits = (idx[:, None] >> np.arange(half, dtype=np.int64)[None, :]) & 1
        left = (1 - 2 * bits).astype(np.int8)
        right = -left[:, ::-1]
        return np.concatenate([left, right], axis=1)


class SymmetricFunctions(FunctionSpace):
    """Functions of the level x_1 + ... + x_n only; 2^(n+1) members."""

    def __init__(self, n: int):
        if n > 20:
            raise CapacityError("symmetric space capped at n = 20")
        self.n = n
        self.name = f"symmetric-n{n}"

    def size(self) -> int:
        return 1 << (self.n + 1)

    def tables_for_indices(self, idx):
        pc = popcounts_upto(1 << self.n)
        level_bits = (idx[:, None] >> np.arange(self.n + 1, dtype=np.int64)[None, :]) & 1
        signs = (1 - 2 * level_bits).astype(np.int8)
        return signs[:, pc]


class MonotoneFunctions(FunctionSpace):
    """All monotone functions, generated by upset-respecting DFS."""

    def __init__(self, n: int):
        if n > 5:
            raise CapacityError("monotone enumeration capped at n = 5")
        self.n = n
        self.name = f"monotone-n{n}"
        self._tables = self._generate()

    def _generate(self):
        size = 1 << self.n
        order = sorted(range(size), key=lambda m: (bin(m).count("1"), m))
        subs = []
        for m in order:
            subs.append([m ^ (1 << i) for i in range(self.n) if (m >> i) & 1])
        out = []
        table = np.ones(size, dtype=np.int8)

        def rec(pos):
            if pos == len(order):
                out.append(table.copy())
                return
            m = order[pos]
            forced = any(table[u] == -1 for u in subs[pos])
            if forced:
                table[m] = -1
                rec(pos + 1)
                table[m] = 1
                return
            table[m] = 1
            rec(pos + 1)
            table[m] = -1
            rec(pos + 1)
            table[m] = 1

        rec(0)
        mat = np.stack(out)
        keys = np.argsort(
            [BooleanFunction(self.n, t).table_int() for t in mat], kind="stable"
        )
        return mat[keys]

    def size(self) -> int:
        return self._tables.shape[0]

    def tables_for_indices(self, idx):
        return self._tables[idx]


class Ltfs(FunctionSpace):
    """All linear threshold functions (see threshold.enumerate_ltfs)."""

    def __init__(self, n: int):
        from .threshold import enumerate_ltfs

        if n > 5:
            raise CapacityError("LTF space capped at n = 5")
        self.n = n
        self.name = f"ltf-n{n}"
        fns = enumerate_ltfs(n)
        self._tables = np.stack([f.table for f in fns])

    def size(self) -> int:
        return self._tables.shape[0]

    def tables_for_indices(self, idx):
        return self._tables[idx]


class F2Sets:
    """All subsets of F2^n with density in [lo, hi]; elements are F2Sets."""

    element_kind = "set"

    def __init__(self, n: int, lo: float = 0.0, hi: float = 1.0):
        if n > 4:
            raise CapacityError("full subset space enumerable only for n <= 4")
        self.n = n
        self.lo = lo
        self.hi = hi
        self.name = f"f2sets-n{n}"
        size = 1 << n
        counts = np.zeros(1 << size, dtype=np.int64)
        vals = np.arange(1 << size, dtype=np.int64)
        for b in range(size):
            counts += (vals >> b) & 1
        dens = counts / size
        self._indices = vals[(dens >= lo) & (dens <= hi)]

    def size(self) -> int:
        return len(self._indices)

    def tables_for_indices(self, idx):
        vals = self._indices[idx]
        size = 1 << self.n
        bits = (vals[:, None] >> np.arange(size, dtype=np.int64)[None, :]) & 1
        return bits.astype(bool)

    def batches(self, batch: int = DEFAULT_BATCH):
        total = self.size()
        for start in range(0, total, batch):
            stop = min(start + batch, total)
            yield start, self.tables_for_indices(np.arange(start, stop, dtype=np.int64))

    def elements(self):
        for _, tables in self.batches():
            for row in tables:
                yield F2Set(self.n, row)


class RandomSample:
    """count independent uniform draws from a base space, seeded."""

    def __init__(self, base, count: int, seed: int):
        self.base = base
        self.count = count
        self.seed = seed
        self.n = base.n
        self.element_kind = base.element_kind
        self.name = f"sample-{base.name}-c{count}-s{seed}"

    def size(self) -> int:
        return self.count

    def tables_for_indices(self, idx):
        rng = philox_generator(self.seed, 1)
        draws = rng.integers(0, self.base.size(), size=self.count, dtype=np.int64)
        return self.base.tables_for_indices(draws[idx])

    def batches(self, batch: int = DEFAULT_BATCH):
        total = self.count
        for start in range(0, total, batch):
            stop = min(start + batch, total)
            yield start, self.tables_for_indices(np.arange(start, stop, dtype=np.int64))

    def elements(self):
        for _, tables in self.batches():
            for row in tables:
                if self.element_kind == "set":
                    yield F2Set(self.n, row)
                else:
                    yield BooleanFunction(self.n, row)


def parse_space(spec: str):
    """CLI space grammar: all-n3, odd-n5, monotone-n4, ltf-n3, symmetric-n6,
    f2sets-n4, sample:<space>:<count>:<seed>."""
    spec = spec.strip()
    if spec.startswith("sample:"):
        _, inner, count, seed = spec.split(":")
        return RandomSample(parse_space(inner), int(count), int(seed))
    kinds = {
        "all": AllFunctions,
        "odd": OddFunctions,
        "monotone": MonotoneFunctions,
        "ltf": Ltfs,
        "symmetric": SymmetricFunctions,
        "f2sets": F2Sets,
    }
    for prefix, cls in kinds.items():
        tag = prefix + "-n"
        if spec.startswith(tag):
            return cls(int(spec[len(tag):]))
    raise DomainError(f"unknown search space {spec!r}")
