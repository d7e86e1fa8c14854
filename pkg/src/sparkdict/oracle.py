"""Brute-force spark by exhaustive subset search with exact integer rank."""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import kernel
from .construct import DependencyWitness, ScaledDictionary

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RankResult:
    rank: int
    nullvector: tuple[int, ...] | None = None


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form with row swaps; returns (rows, pivot columns)."""
    a = [list(map(int, row)) for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        sel = next((i for i in range(r, nrows) if a[i][c]), None)
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            a[i] = [(p * x - f * y) // prev for x, y in zip(a[i], a[r])]
        # entries left of c in rows below are already zero; keep them exact zeros
        prev = p
        pivots.append(c)
        r += 1
    return a, pivots


def exact_rank(M) -> RankResult:
    """Rank over Q of an integer matrix, plus a primitive integer kernel vector if rank < columns."""
    rows = [list(map(int, row)) for row in (M.tolist() if isinstance(M, np.ndarray) else M)]
    if not rows or not rows[0]:
        raise ValueError("matrix must be nonempty")
    ncols = len(rows[0])
    ech, pivots = _bareiss_echelon(rows)
    rank = len(pivots)
    if rank == ncols:
        return RankResult(rank)
    free = next(c for c in range(ncols) if c not in pivots)
    x = [Fraction(0)] * ncols
    x[free] = Fraction(1)
    for i in reversed(range(rank)):
        c = pivots[i]
        s = sum((ech[i][j] * x[j] for j in range(c + 1, ncols) if ech[i][j]), Fraction(0))
        x[c] = -s / ech[i][c]
    den = math.lcm(*(v.denominator for v in x))
    ints = [int(v * den) for v in x]
    g = math.gcd(*ints)
    ints = [v // g for v in ints]
    if next(v for v in ints if v) < 0:
        ints = [-v for v in ints]
    return RankResult(rank, tuple(ints))


def de_start(coherence: Fraction) -> int:
    """Smallest subset size not excluded by eta >= 1 + 1/mu."""
    if coherence <= 0:
        return 2
    return max(2, math.ceil(1 + 1 / Fraction(coherence)))


def prune_by_coherence(k: int, coherence: Fraction) -> bool:
    """True when k-subsets need a rank test (k at or above the Donoho-Elad bound)."""
    return k >= de_start(coherence)


@dataclass
class SparkSearchReport:
    spark: int | None
    lower_bound: int
    witness: DependencyWitness | None
    subsets_examined: int
    subsets_skipped: int
    elapsed: float
    backend: str = ""
    levels: list[dict] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "witness": self.witness.to_json() if self.witness else None,
            "subsets_examined": self.subsets_examined,
            "subsets_skipped": self.subsets_skipped,
            "elapsed_ms": int(round(self.elapsed * 1000)),
        }
        if self.spark is not None:
            out["spark"] = self.spark
        else:
            out["lower_bound"] = self.lower_bound
        return out


def _branch(args):
    vecs, k, i, backend = args
    return kernel.search_level(vecs, k, i, i + 1, backend)


def _search_level(vecs, k, threads, backend, progress):
    """Walk the k-subsets branch by branch (first index); return (hit, examined)."""
    n = len(vecs)
    examined = 0
    branches = range(0, n - k + 1)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_branch, (vecs, k, i, backend)) for i in branches]
            for i, fut in zip(branches, futures):
                status, subset, count = fut.result()
                examined += count
                if progress:
                    progress(k, i, examined)
                if status != 0:
                    for f in futures:
                        f.cancel()
                    return status, subset, examined
        return 0, None, examined
    for i in branches:
        status, subset, count = kernel.search_level(vecs, k, i, i + 1, backend)
        examined += count
        if progress:
            progress(k, i, examined)
        if status != 0:
            return status, subset, examined
    return 0, None, examined


def brute_spark(
    D: ScaledDictionary | np.ndarray,
    k_max: int,
    *,
    coherence: Fraction | None = None,
    prune: bool = True,
    threads: int = 1,
    backend: str | None = None,
    progress: Callable[[int, int, int], None] | None = None,
) -> SparkSearchReport:
    """Smallest dependent column subset of size <= k_max, searched level by level.

    With ``prune`` the levels below the Donoho-Elad bound are skipped; the
    bound is computed from ``coherence`` (or from D when not given).  The hit
    at a level is the lexicographically first dependent subset, whatever the
    number of worker processes.
    """
    matrix = D.matrix if isinstance(D, ScaledDictionary) else np.asarray(D, dtype=np.int64)
    ncols = matrix.shape[1]
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    if k_max > ncols:
        raise ValueError(f"k_max {k_max} exceeds column count {ncols}")
    vecs = np.ascontiguousarray(matrix.T)
    start = 2
    if prune:
        if coherence is None:
            from .certify import gram_coherence

            coherence = gram_coherence(matrix)
        start = de_start(coherence)
    skipped = sum(math.comb(ncols, k) for k in range(2, min(start, k_max + 1)))
    t0 = time.perf_counter()
    examined = 0
    levels = []
    used = kernel.resolve(vecs, k_max, backend)
    backend = used
    for k in range(start, k_max + 1):
        status, subset, count = _search_level(vecs, k, threads, backend, progress)
        examined += count
        levels.append({"k": k, "examined": count})
        log.info("k=%d: %d subsets examined", k, count)
        if status == -2:
            raise RuntimeError(f"dependent prefix {subset} below level {k}: skipped level was not empty")
        if status == 1:
            res = exact_rank(matrix[:, list(subset)])
            if res.nullvector is None or 0 in res.nullvector:
                raise RuntimeError(f"kernel hit {subset} failed exact confirmation")
            witness = DependencyWitness(tuple(subset), res.nullvector)
            return SparkSearchReport(k, k, witness, examined, skipped,
                                     time.perf_counter() - t0, used, levels)
    return SparkSearchReport(None, k_max + 1, None, examined, skipped,
                             time.perf_counter() - t0, used, levels)


def columns_rank(D: ScaledDictionary, indices: Sequence[int]) -> RankResult:
    return exact_rank(D.matrix[:, list(indices)])
