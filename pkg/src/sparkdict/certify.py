"""Exact coherence, spark lower bounds, lemma checks and the spark certificate."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import field
from .construct import (
    DependencyWitness,
    ScaledDictionary,
    build_S,
    build_dictionary,
    dependent_set,
)
from .field import FieldSpec

# Checks that loop over all (a, b) pairs of the big field are run only up to this degree.
EXHAUSTIVE_MAX_DEGREE = 8


def rational_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def rational_from_json(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def _gram(matrix: np.ndarray) -> np.ndarray:
    m = np.asarray(matrix, dtype=np.int64)
    bound = m.shape[0] * int(np.abs(m).max(initial=0)) ** 2
    if bound >= 2**62:
        obj = m.astype(object)
        return obj.T @ obj
    return m.T @ m


def gram_coherence(matrix: np.ndarray) -> Fraction:
    """max |<c_i, c_j>| / (|c_i| |c_j|) over i != j for an integer matrix with equal-norm columns."""
    gram = _gram(matrix)
    diag = np.diag(gram)
    if len(set(diag.tolist())) != 1:
        raise ValueError("columns must share one norm for an exact rational coherence")
    off = np.abs(gram)
    np.fill_diagonal(off, 0)
    return Fraction(int(off.max()), int(diag[0]))


def mutual_coherence(D: ScaledDictionary) -> Fraction:
    if len(D) < 2:
        raise ValueError("dictionary needs at least two columns")
    return gram_coherence(D.matrix)


@dataclass
class CoherenceReport:
    passed: bool
    pairs: int
    violations: list[tuple[int, int, int]]
    sign_counts: dict[str, int]

    def detail(self) -> str:
        if self.passed:
            return (f"{self.pairs} pairs; cross-basis signs "
                    f"+{self.sign_counts['plus']} / -{self.sign_counts['minus']}")
        return f"{len(self.violations)} violations, first {self.violations[:5]}"


def cross_coherence_check(D: ScaledDictionary, max_violations: int = 50) -> CoherenceReport:
    """Classify every Gram entry: diagonal 4^m, same basis 0, different bases +-2^m."""
    gram = _gram(D.matrix)
    ids = D.basis_ids
    same = ids[:, None] == ids[None, :]
    expected_abs = np.where(same, 0, 1 << D.scale_log2)
    np.fill_diagonal(expected_abs, 1 << (2 * D.scale_log2))
    bad = np.abs(gram) != expected_abs
    bad = np.triu(bad)
    violations = [(int(i), int(j), int(gram[i, j])) for i, j in zip(*np.nonzero(bad))]
    q = D.spec.q
    # signs of trace-vs-trace cross products, recorded only
    tt = np.triu(~same & (ids[:, None] != q) & (ids[None, :] != q), 1)
    plus = int(np.count_nonzero(tt & (gram > 0)))
    minus = int(np.count_nonzero(tt & (gram < 0)))
    ncol = len(D)
    return CoherenceReport(not violations, ncol * (ncol - 1) // 2,
                           violations[:max_violations], {"plus": plus, "minus": minus})


def lower_bounds(mu: Fraction, q: int) -> tuple[Fraction, Fraction, Fraction]:
    """(1 + 1/mu, 2/mu, (1 + 1/q)/mu): Donoho-Elad, Elad-Bruckstein, Gribonval-Nielsen."""
    mu = Fraction(mu)
    if mu <= 0:
        raise ValueError("coherence must be positive")
    inv = 1 / mu
    return 1 + inv, 2 * inv, (1 + Fraction(1, q)) * inv


def verify_witness(D: ScaledDictionary, w: DependencyWitness) -> tuple[bool, int]:
    """Exact integer check that the combination vanishes; returns (ok, size)."""
    if len(w) == 0:
        raise ValueError("witness must be nonempty")
    for i in w.column_indices:
        if not 0 <= i < len(D):
            raise ValueError(f"column index {i} out of range")
    cols = D.matrix[:, list(w.column_indices)].astype(object)
    residual = cols @ np.array(w.coefficients, dtype=object)
    return all(v == 0 for v in residual), len(w)


# -- lemma checks -----------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _check_trace_properties(spec: FieldSpec) -> Check:
    order = spec.order
    for to in _divisors(spec.n):
        tr = [field.trace(spec, a, spec.n, to) for a in range(order)]
        sub = [c for c in range(order) if field.in_subfield(spec, c, to)]
        for a in range(order):
            if not field.in_subfield(spec, tr[a], to):
                return Check("lemma3", False, f"Tr_{to}({a:#x}) = {tr[a]:#x} outside subfield")
            if tr[field.frobenius(spec, a, to)] != tr[a]:
                return Check("lemma3", False, f"(3) fails at a={a:#x}, to={to}")
            for b in range(order):
                if tr[a ^ b] != tr[a] ^ tr[b]:
                    return Check("lemma3", False, f"(1) fails at a={a:#x}, b={b:#x}, to={to}")
            for c in sub:
                if tr[field.mul(spec, c, a)] != field.mul(spec, c, tr[a]):
                    return Check("lemma3", False, f"(2) fails at a={a:#x}, c={c:#x}, to={to}")
        counts = {c: 0 for c in sub}
        for v in tr:
            counts[v] += 1
        if set(counts.values()) != {1 << (spec.n - to)}:
            return Check("lemma3", False, f"(4) fiber sizes {sorted(set(counts.values()))} for to={to}")
    return Check("lemma3", True, f"parts 1-4 for every divisor of n={spec.n}")


def _check_transitivity(spec: FieldSpec) -> Check:
    checked = 0
    for mid in _divisors(spec.n):
        for low in _divisors(mid):
            for a in range(spec.order):
                lhs = field.trace(spec, a, spec.n, low)
                rhs = field.trace(spec, field.trace(spec, a, spec.n, mid), mid, low)
                if lhs != rhs:
                    return Check("transitivity", False, f"a={a:#x}, l={low}, m={mid}")
                checked += 1
    return Check("transitivity", True, f"{checked} (a, l, m) triples")


def _check_corollary1(spec: FieldSpec) -> Check:
    total = sum(1 - 2 * b for b in field.trace_table(spec))
    return Check("corollary1", total == 0, f"signed sum {total}")


def _check_quadratic(spec: FieldSpec) -> Check:
    """Trace criterion against the image of x -> x^2 + a x for every a != 0."""
    order = spec.order
    squares = [field.mul(spec, x, x) for x in range(order)]
    for a in range(1, order):
        solvable = {squares[x] ^ field.mul(spec, a, x) for x in range(order)}
        for b in range(order):
            if field.quadratic_solvable(spec, a, b) != (b in solvable):
                return Check("lemma1", False, f"a={a:#x}, b={b:#x}")
    return Check("lemma1", True, f"{(order - 1) * order} (a, b) pairs")


def _check_counting(spec: FieldSpec) -> Check:
    m, r = spec.m, spec.r
    sub_m = field.subfield_elements(spec, m)
    bs = [b for b in sub_m if field.trace(spec, b, m, r) == 0]
    for y in sub_m:
        count = sum(1 for b in bs if field.trace_bit(spec, field.mul(spec, b, y), m) == 0)
        want = 1 << (m - r) if field.in_subfield(spec, y, r) else 1 << (m - r - 1)
        if count != want:
            return Check("lemma2", False, f"y={y:#x}: {count} != {want}")
    return Check("lemma2", True, f"{len(sub_m)} values of y")


def _check_orthonormal(D: ScaledDictionary) -> Check:
    scale = 1 << (2 * D.scale_log2)
    size = D.spec.order
    for blk in range(D.spec.q + 1):
        cols = D.matrix[:, blk * size:(blk + 1) * size]
        if not np.array_equal(_gram(cols), scale * np.eye(size, dtype=np.int64)):
            return Check("lemma4", False, f"basis block {blk} Gram != 4^m I")
    return Check("lemma4", True, f"{D.spec.q + 1} Gram matrices equal 4^m I")


def _check_unit_circle(spec: FieldSpec) -> Check:
    circle = set(field.unit_circle(spec))
    if len(circle) != (1 << spec.m) + 1:
        return Check("unit_circle", False, f"|U| = {len(circle)}")
    for a in range(1, spec.order):
        u, v = field.decompose_uv(spec, a)
        if u not in circle or v == 0 or not field.in_subfield(spec, v, spec.m) or field.mul(spec, u, v) != a:
            return Check("unit_circle", False, f"decomposition fails at a={a:#x}")
    return Check("unit_circle", True, f"|U| = {len(circle)}; a = uv for all nonzero a")


def lemma_suite(spec: FieldSpec, D: ScaledDictionary | None = None) -> list[Check]:
    """Named checks; failures are reported in the log, never raised."""
    D = D if D is not None else build_dictionary(spec)
    checks = [_check_corollary1(spec), _check_counting(spec), _check_unit_circle(spec)]
    if spec.n <= EXHAUSTIVE_MAX_DEGREE:
        checks += [_check_trace_properties(spec), _check_transitivity(spec), _check_quadratic(spec)]
    checks.append(_check_orthonormal(D))
    cross = cross_coherence_check(D)
    checks.append(Check("lemma5_8", cross.passed, cross.detail()))
    w = dependent_set(spec)
    ok, size = verify_witness(D, w)
    checks.append(Check("lemma6", ok, f"witness of {size} columns sums to zero" if ok else "nonzero residual"))
    s_size = len(build_S(spec))
    want = 1 << (spec.m - spec.r)
    checks.append(Check("lemma7", s_size == want, f"|S| = {s_size}, expected {want}"))
    return checks


# -- certificate --------------------------------------------------------------------


@dataclass
class SparkCertificate:
    spec: FieldSpec
    scale_log2: int
    coherence: Fraction
    bound_donoho_elad: Fraction
    bound_elad_bruckstein: Fraction
    bound_gribonval_nielsen: Fraction
    upper_bound: int
    witness: DependencyWitness
    concluded_spark: int | tuple[int, int]
    check_log: list[Check] = dc_field(default_factory=list)

    @property
    def concluded(self) -> bool:
        return isinstance(self.concluded_spark, int)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.check_log)

    def to_json(self) -> dict:
        spark = self.concluded_spark if self.concluded else list(self.concluded_spark)
        return {
            "field": self.spec.to_json(),
            "scale_log2": self.scale_log2,
            "coherence": rational_json(self.coherence),
            "bounds": {
                "de": rational_json(self.bound_donoho_elad),
                "eb": rational_json(self.bound_elad_bruckstein),
                "gn": rational_json(self.bound_gribonval_nielsen),
            },
            "witness": self.witness.to_json(),
            "concluded_spark": spark,
            "checks": [c.to_json() for c in self.check_log],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "SparkCertificate":
        spark = data["concluded_spark"]
        w = DependencyWitness.from_json(data["witness"])
        if w.to_json()["size"] != data["witness"]["size"]:
            raise ValueError("witness size field disagrees with its indices")
        return cls(
            spec=FieldSpec.from_json(data["field"]),
            scale_log2=int(data["scale_log2"]),
            coherence=rational_from_json(data["coherence"]),
            bound_donoho_elad=rational_from_json(data["bounds"]["de"]),
            bound_elad_bruckstein=rational_from_json(data["bounds"]["eb"]),
            bound_gribonval_nielsen=rational_from_json(data["bounds"]["gn"]),
            upper_bound=len(w),
            witness=w,
            concluded_spark=spark if isinstance(spark, int) else tuple(spark),
            check_log=[Check(c["name"], bool(c["pass"]), c.get("detail", "")) for c in data["checks"]],
        )

    @classmethod
    def loads(cls, text: str) -> "SparkCertificate":
        return cls.from_json(json.loads(text))


def conclude(gn_bound: Fraction, witness_size: int, witness_ok: bool, dim: int) -> int | tuple[int, int]:
    """Exact spark when the ceiled lower bound meets a verified witness, else an interval.

    Without a verified witness the only upper bound is dim + 1.
    """
    lb = math.ceil(gn_bound)
    if witness_ok and lb == witness_size:
        return witness_size
    return (lb, witness_size if witness_ok else dim + 1)


def certify(spec: FieldSpec, *, run_lemmas: bool = True) -> SparkCertificate:
    D = build_dictionary(spec)
    mu = mutual_coherence(D)
    de, eb, gn = lower_bounds(mu, spec.q)
    w = dependent_set(spec)
    ok, size = verify_witness(D, w)
    checks = [
        Check("coherence", mu == Fraction(1, 1 << spec.m), f"mu = {mu}"),
        Check("witness", ok, f"size {size}"),
        Check("gn_meets_witness", ok and math.ceil(gn) == size, f"ceil(GN) = {math.ceil(gn)}, |w| = {size}"),
    ]
    if run_lemmas:
        checks += lemma_suite(spec, D)
    return SparkCertificate(
        spec=spec,
        scale_log2=D.scale_log2,
        coherence=mu,
        bound_donoho_elad=de,
        bound_elad_bruckstein=eb,
        bound_gribonval_nielsen=gn,
        upper_bound=size,
        witness=w,
        concluded_spark=conclude(gn, size, ok, D.rows),
        check_log=checks,
    )
