"""Deterministic extremal search over enumerable spaces.

Chunks are evaluated independently (optionally on a thread pool) and
reduced in fixed chunk order; ties break toward the lexicographically
least truth-table hex, so results are identical for any worker count.
Budgets are expressed in evaluated nodes, never seconds.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .f2n import F2Set
from .function import BooleanFunction
from .functionals import get_functional

CHUNK = 4096


def worker_count(explicit=None) -> int:
    if explicit:
        return max(1, int(explicit))
    env = os.environ.get("BOOLFUN_WORKERS")
    if env:
        return max(1, int(env))
    return 1


@dataclass(frozen=True)
class SearchOutcome:
    value: float
    witness_key: int        # truth-table / bitset integer
    witness_hex: str
    evaluated: int
    budgeted: bool


def extremal_search(
    space,
    functional_name: str,
    direction: str = "max",
    params: dict | None = None,
    node_budget: int | None = None,
    workers: int | None = None,
) -> SearchOutcome:
    """Extremal value of a registered functional over a space, with the
    lexicographically least witness among ties."""
    if direction not in ("max", "min"):
        raise DomainError("direction must be 'max' or 'min'")
    params = params or {}
    functional = get_functional(functional_name)
    if functional.element_kind != space.element_kind:
        raise DomainError(
            f"functional {functional_name!r} expects {functional.element_kind} elements"
        )
    sign = 1.0 if direction == "max" else -1.0
    total = space.size()
    limit = total if node_budget is None else min(total, node_budget)

    chunks = []
    for start, tables in space.batches(CHUNK):
        if start >= limit:
            break
        if start + tables.shape[0] > limit:
            tables = tables[: limit - start]
        chunks.append(tables)

    def eval_chunk(tables):
        if space.element_kind == "set":
            vals = np.array(
                [sign * functional.value(F2Set(space.n, t), **params) for t in tables]
            )
        else:
            vals = sign * np.asarray(functional.batch(tables, space.n, **params),
                                     dtype=np.float64)
        best = -math.inf
        best_hex = None
        for v, row in zip(vals, tables):
            if v > best:
                best = float(v)
                best_hex = _row_hex(space, row)
            elif v == best and best_hex is not None:
                h = _row_hex(space, row)
                if h < best_hex:
                    best_hex = h
        return best, best_hex

    nworkers = worker_count(workers)
    if nworkers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            results = list(pool.map(eval_chunk, chunks))
    else:
        results = [eval_chunk(c) for c in chunks]

    best = -math.inf
    best_hex = None
    for value, hex_ in results:
        if hex_ is None:
            continue
        if value > best or (value == best and (best_hex is None or hex_ < best_hex)):
            best = value
            best_hex = hex_
    evaluated = sum(c.shape[0] for c in chunks)
    return SearchOutcome(
        value=sign * best,
        witness_key=int(best_hex.split(":")[-1], 16) if best_hex else -1,
        witness_hex=best_hex,
        evaluated=evaluated,
        budgeted=evaluated < total,
    )


def _row_hex(space, row) -> str:
    if space.element_kind == "set":
        return F2Set(space.n, row).to_str()
    return BooleanFunction(space.n, row).to_hex()
