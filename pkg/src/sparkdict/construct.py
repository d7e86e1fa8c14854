"""The q+1 orthonormal bases and their union, stored as integers scaled by 2^m.

Trace-character columns are indexed by (a, b) with a in F_{2^r} and b in
F_{2^n}; the entry at coordinate x is (-1)^(Tr_1^m(a x^(2^m+1)) + Tr_1^n(b x)).
Standard columns e_x carry 2^m at coordinate x.  Dividing by 2^m gives the
unit-norm dictionary.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import field
from .field import FieldSpec


@dataclass(frozen=True, order=True)
class ColumnLabel:
    """``a`` is None for a standard column; ``index`` is b (trace column) or x (standard)."""

    a: int | None
    index: int

    @property
    def is_standard(self) -> bool:
        return self.a is None

    def __str__(self):
        if self.a is None:
            return f"e,x={self.index:x}"
        return f"a={self.a:x},b={self.index:x}"

    @classmethod
    def parse(cls, text: str) -> "ColumnLabel":
        left, right = text.split(",")
        if left == "e":
            return cls(None, int(right.removeprefix("x="), 16))
        return cls(int(left.removeprefix("a="), 16), int(right.removeprefix("b="), 16))


@dataclass(frozen=True)
class ScaledColumn:
    label: ColumnLabel
    entries: tuple[int, ...]


@dataclass(frozen=True)
class DependencyWitness:
    column_indices: tuple[int, ...]
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.column_indices) != len(self.coefficients):
            raise ValueError("indices and coefficients differ in length")
        if len(set(self.column_indices)) != len(self.column_indices):
            raise ValueError("witness indices must be distinct")
        if any(c == 0 for c in self.coefficients):
            raise ValueError("witness coefficients must be nonzero")

    def __len__(self):
        return len(self.column_indices)

    def to_json(self) -> dict:
        return {
            "indices": list(self.column_indices),
            "coeffs": list(self.coefficients),
            "size": len(self),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DependencyWitness":
        return cls(tuple(data["indices"]), tuple(data["coeffs"]))


class ScaledDictionary:
    """Integer matrix of shape (2^n, (q+1) 2^n); true columns are ``matrix / 2**scale_log2``."""

    def __init__(self, spec: FieldSpec, labels: list[ColumnLabel], matrix: np.ndarray):
        if matrix.shape != (spec.order, len(labels)):
            raise ValueError(f"matrix shape {matrix.shape} does not match labels")
        self.spec = spec
        self.labels = list(labels)
        self.matrix = matrix
        self.matrix.setflags(write=False)
        self.scale_log2 = spec.m

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    def __len__(self):
        return self.matrix.shape[1]

    def column(self, i: int) -> ScaledColumn:
        return ScaledColumn(self.labels[i], tuple(int(v) for v in self.matrix[:, i]))

    @property
    def columns(self) -> list[ScaledColumn]:
        return [self.column(i) for i in range(len(self))]

    @cached_property
    def index_of(self) -> dict[ColumnLabel, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def basis_ids(self) -> np.ndarray:
        """Per-column basis id: a for trace columns, q for the standard basis."""
        q = self.spec.q
        ids = {a: i for i, a in enumerate(field.subfield_elements(self.spec, self.spec.r))}
        return np.array([q if lab.a is None else ids[lab.a] for lab in self.labels])

    def manifest(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "scale_log2": self.scale_log2,
            "column_labels": [str(lab) for lab in self.labels],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(str(lab) for lab in self.labels)
        writer.writerows(self.matrix.tolist())
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, manifest: dict) -> "ScaledDictionary":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if header != manifest["column_labels"]:
            raise ValueError("CSV header does not match manifest labels")
        spec = FieldSpec.from_json(manifest["spec"])
        matrix = np.array([[int(v) for v in row] for row in reader], dtype=np.int64)
        return cls(spec, [ColumnLabel.parse(h) for h in header], matrix)


def _norm_trace_bits(spec: FieldSpec, a: int) -> np.ndarray:
    """Tr_1^m(a x^(2^m+1)) for every coordinate x."""
    out = np.zeros(spec.order, dtype=np.int64)
    if a == 0:
        return out
    cache: dict[int, int] = {}
    for x in range(spec.order):
        y = field.mul(spec, a, field.norm(spec, x))
        if y not in cache:
            cache[y] = field.trace_bit(spec, y, spec.m)
        out[x] = cache[y]
    return out


@lru_cache(maxsize=8)
def _linear_trace_bits(spec: FieldSpec) -> np.ndarray:
    """Tr_1^n(b x) as a (b, x) table."""
    tr = np.frombuffer(field.trace_table(spec), dtype=np.uint8).astype(np.int64)
    products = np.array(
        [[field.mul(spec, b, x) for x in range(spec.order)] for b in range(spec.order)],
        dtype=np.int64,
    )
    return tr[products]


def _basis_matrix(spec: FieldSpec, a: int) -> np.ndarray:
    exponent = (_linear_trace_bits(spec) + _norm_trace_bits(spec, a)[None, :]) & 1
    return (1 - 2 * exponent).T  # rows = coordinates x, columns = b


def build_basis(spec: FieldSpec, a: int) -> list[ScaledColumn]:
    if not field.in_subfield(spec, a, spec.r):
        raise ValueError(f"a = {a:#x} is not in F_2^{spec.r}")
    mat = _basis_matrix(spec, a)
    return [
        ScaledColumn(ColumnLabel(a, b), tuple(int(v) for v in mat[:, b]))
        for b in range(spec.order)
    ]


def build_standard_basis(spec: FieldSpec) -> list[ScaledColumn]:
    scale = 1 << spec.m
    cols = []
    for x in range(spec.order):
        entries = [0] * spec.order
        entries[x] = scale
        cols.append(ScaledColumn(ColumnLabel(None, x), tuple(entries)))
    return cols


def build_dictionary(spec: FieldSpec) -> ScaledDictionary:
    """All B_a (a ascending, then b ascending), then the standard basis by x."""
    blocks, labels = [], []
    for a in field.subfield_elements(spec, spec.r):
        blocks.append(_basis_matrix(spec, a))
        labels.extend(ColumnLabel(a, b) for b in range(spec.order))
    blocks.append(np.eye(spec.order, dtype=np.int64) << spec.m)
    labels.extend(ColumnLabel(None, x) for x in range(spec.order))
    return ScaledDictionary(spec, labels, np.ascontiguousarray(np.hstack(blocks)))


def build_S(spec: FieldSpec) -> list[int]:
    """x with Tr_r^m(x^(2^m+1)) = 0 and x + x^(2^m) in F_{2^r}."""
    out = []
    for x in range(spec.order):
        if field.trace(spec, field.norm(spec, x), spec.m, spec.r) != 0:
            continue
        if field.in_subfield(spec, x ^ field.frobenius(spec, x, spec.m), spec.r):
            out.append(x)
    return out


def dependent_set(spec: FieldSpec) -> DependencyWitness:
    """+1 on B_{a,b} for a in F_{2^r}, b in F_{2^m} with Tr_r^m(b) = 0; -1 on e_x for x in S."""
    bs = [b for b in field.subfield_elements(spec, spec.m)
          if field.trace(spec, b, spec.m, spec.r) == 0]
    order = spec.order
    indices, coeffs = [], []
    for ai, _a in enumerate(field.subfield_elements(spec, spec.r)):
        indices.extend(ai * order + b for b in bs)
        coeffs.extend([1] * len(bs))
    base = spec.q * order
    for x in build_S(spec):
        indices.append(base + x)
        coeffs.append(-1)
    return DependencyWitness(tuple(indices), tuple(coeffs))


def manifest_json(d: ScaledDictionary) -> str:
    return json.dumps(d.manifest(), sort_keys=True, indent=2) + "\n"
