"""Exhaustive l0 recovery on small dictionaries, with exact rational arithmetic."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .certify import certify, rational_json
from .construct import ScaledDictionary, build_dictionary
from .field import FieldSpec
from .oracle import exact_rank

PRNG_NAME = "MT19937 (Python random.Random)"


@dataclass(frozen=True)
class SparseVector:
    support: tuple[int, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.support) != len(self.values):
            raise ValueError("support and values differ in length")
        if len(set(self.support)) != len(self.support):
            raise ValueError("support indices must be distinct")
        if any(v == 0 for v in self.values):
            raise ValueError("values must be nonzero")

    @classmethod
    def make(cls, support: Sequence[int], values: Sequence) -> "SparseVector":
        pairs = sorted(zip(support, (Fraction(v) for v in values)))
        return cls(tuple(i for i, _ in pairs), tuple(v for _, v in pairs))

    def __len__(self):
        return len(self.support)


def synthesize(D: ScaledDictionary, x: SparseVector) -> tuple[Fraction, ...]:
    """v = D x with unit-norm columns (scaled columns over 2^m)."""
    scale = 1 << D.scale_log2
    acc = [0] * D.rows
    for i, val in zip(x.support, x.values):
        if not 0 <= i < len(D):
            raise ValueError(f"column index {i} out of range")
        col = D.matrix[:, i].tolist()
        acc = [s + val * c for s, c in zip(acc, col)]
    return tuple(Fraction(s) / scale for s in acc)


def _integer_target(v: Sequence[Fraction], scale: int) -> tuple[list[int], int]:
    """Write scale * v as ints / den, returning (ints, den)."""
    den = math.lcm(*(Fraction(x).denominator for x in v)) if v else 1
    return [int(Fraction(x) * scale * den) for x in v], den


def _solve_on_support(D: ScaledDictionary, support, target: list[int], den: int):
    """Coefficients x with sum x_i col_i = target/den (scaled columns), or None."""
    cols = D.matrix[:, list(support)].tolist()
    aug = [row + [-t] for row, t in zip(cols, target)]
    res = exact_rank(aug)
    if res.nullvector is None or res.nullvector[-1] == 0:
        return None
    if exact_rank(cols).rank != len(support):
        return None
    last = res.nullvector[-1]
    return tuple(Fraction(c, last * den) for c in res.nullvector[:-1])


@dataclass
class L0Result:
    solution: SparseVector | None
    unique: bool
    supports_checked: int


def l0_solve(D: ScaledDictionary, v: Sequence, k_cap: int) -> L0Result:
    """Sparsest exact representation of v with at most k_cap columns.

    Supports are tried by size, then lexicographically; at the minimal size
    the search runs to the end so uniqueness can be reported.
    """
    if k_cap > len(D):
        raise ValueError("k_cap exceeds column count")
    target, den = _integer_target(v, 1 << D.scale_log2)
    if not any(target):
        return L0Result(SparseVector((), ()), True, 0)
    checked = 0
    for size in range(1, k_cap + 1):
        found = []
        for support in itertools.combinations(range(len(D)), size):
            checked += 1
            coeffs = _solve_on_support(D, support, target, den)
            if coeffs is not None and all(coeffs):
                found.append(SparseVector(support, coeffs))
        if found:
            return L0Result(found[0], len(found) == 1, checked)
    return L0Result(None, False, checked)


@dataclass
class DemoReport:
    spec: FieldSpec
    spark: int
    k: int
    trials: int
    successes: int
    seed: int
    collision: dict

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "k": self.k,
            "trials": self.trials,
            "successes": self.successes,
            "seed": self.seed,
            "prng": PRNG_NAME,
            "spark": self.spark,
            "collision_exhibit": self.collision,
        }


def collision_exhibit(D: ScaledDictionary, witness, spark: int) -> dict:
    """Split the dependency into its trace-column and standard-column parts; both give one vector."""
    b_part = [(i, c) for i, c in zip(witness.column_indices, witness.coefficients)
              if not D.labels[i].is_standard]
    e_part = [(i, -c) for i, c in zip(witness.column_indices, witness.coefficients)
              if D.labels[i].is_standard]
    xb = SparseVector.make([i for i, _ in b_part], [c for _, c in b_part])
    xe = SparseVector.make([i for i, _ in e_part], [c for _, c in e_part])
    vb, ve = synthesize(D, xb), synthesize(D, xe)
    return {
        "trace_support": list(xb.support),
        "standard_support": list(xe.support),
        "trace_size": len(xb),
        "standard_size": len(xe),
        "same_vector": vb == ve,
        "half_spark": rational_json(Fraction(spark, 2)),
        "larger_reaches_half_spark": max(len(xb), len(xe)) >= Fraction(spark, 2),
    }


def uniqueness_demo(spec: FieldSpec, trials: int, seed: int, spark: int | None = None) -> DemoReport:
    D = build_dictionary(spec)
    cert = certify(spec, run_lemmas=False)
    if spark is None:
        if not cert.concluded:
            raise ValueError("spark not concluded; pass it explicitly")
        spark = cert.concluded_spark
    k = (spark - 1) // 2
    rng = random.Random(seed)
    nonzero = [v for v in range(-8, 9) if v]
    successes = 0
    for _ in range(trials):
        support = rng.sample(range(len(D)), k)
        values = [rng.choice(nonzero) for _ in range(k)]
        planted = SparseVector.make(support, values)
        got = l0_solve(D, synthesize(D, planted), k)
        if got.solution == planted and got.unique:
            successes += 1
    return DemoReport(spec, spark, k, trials, successes, seed,
                      collision_exhibit(D, cert.witness, spark))
