"""Binary field arithmetic for GF(2^n) with the tower F_{2^r} <= F_{2^m} <= F_{2^n}.

Elements are plain ints: bit i is the coefficient of x^i in the residue
polynomial, so addition is ``^`` and 0/1 are the additive/multiplicative
identities.  A :class:`FieldSpec` carries the modulus and the tower
parameters (n = 2m, m = t*r) and is passed alongside the elements.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

DEFAULT_MAX_DEGREE = 20
MAX_DEGREE_ENV = "SPARKDICT_MAX_DEGREE"


class FieldSizeError(RuntimeError):
    """Requested field exceeds the configured degree cap."""


def max_degree() -> int:
    value = os.environ.get(MAX_DEGREE_ENV)
    return int(value) if value else DEFAULT_MAX_DEGREE


@dataclass(frozen=True)
class FieldSpec:
    degree: int
    modulus: int
    r: int
    t: int

    def __post_init__(self):
        if self.r < 1 or self.t < 1:
            raise ValueError("r and t must be positive")
        if self.degree != 2 * self.t * self.r:
            raise ValueError(f"degree {self.degree} != 2*t*r = {2 * self.t * self.r}")
        if self.modulus.bit_length() != self.degree + 1:
            raise ValueError("modulus must have degree n")

    @property
    def n(self) -> int:
        return self.degree

    @property
    def m(self) -> int:
        return self.t * self.r

    @property
    def q(self) -> int:
        return 1 << self.r

    @property
    def order(self) -> int:
        return 1 << self.degree

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "t": self.t, "modulus_hex": format(self.modulus, "x")}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        spec = cls(int(data["n"]), int(data["modulus_hex"], 16), int(data["r"]), int(data["t"]))
        if not is_irreducible(spec.modulus):
            raise ValueError(f"modulus {data['modulus_hex']} is not irreducible")
        return spec


# -- polynomials over GF(2), encoded as ints ------------------------------------

def _clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _polymod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def _polygcd(a: int, b: int) -> int:
    while b:
        a, b = b, _polymod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin's test: x^(2^n) = x mod f and gcd(x^(2^(n/p)) - x, f) = 1 for primes p | n."""
    n = f.bit_length() - 1
    if n < 1:
        return False

    def frob_x(k):
        y = 2  # the polynomial x
        for _ in range(k):
            y = _polymod(_clmul(y, y), f)
        return y

    if frob_x(n) != _polymod(2, f):
        return False
    for p in _prime_factors(n):
        if _polygcd(f, frob_x(n // p) ^ 2) != 1:
            return False
    return True


def irreducible_polys(n: int):
    """Yield the irreducible degree-n polynomials over GF(2) in increasing bit order."""
    for f in range(1 << n, 1 << (n + 1)):
        if f & 1 or n == 1:
            if is_irreducible(f):
                yield f


def build_field(r: int, t: int, modulus: int | None = None) -> FieldSpec:
    """Return the field GF(2^(2tr)); the default modulus is the smallest irreducible one."""
    if r < 1 or t < 1:
        raise ValueError("r and t must be positive integers")
    n = 2 * t * r
    cap = max_degree()
    if n > cap:
        raise FieldSizeError(
            f"degree n = {n} exceeds the size cap n <= {cap} (set {MAX_DEGREE_ENV} to raise it)"
        )
    if modulus is None:
        modulus = next(irreducible_polys(n))
    elif modulus.bit_length() != n + 1 or not is_irreducible(modulus):
        raise ValueError(f"{modulus:#x} is not an irreducible polynomial of degree {n}")
    return FieldSpec(n, modulus, r, t)


# -- element arithmetic ---------------------------------------------------------

def mul(spec: FieldSpec, a: int, b: int) -> int:
    return _polymod(_clmul(a, b), spec.modulus)


def pow(spec: FieldSpec, a: int, e: int) -> int:
    """Square-and-multiply; 0**0 is 1."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    out = 1
    while e:
        if e & 1:
            out = mul(spec, out, a)
        a = mul(spec, a, a)
        e >>= 1
    return out


def inverse(spec: FieldSpec, a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(spec, a, spec.order - 2)


def frobenius(spec: FieldSpec, a: int, k: int = 1) -> int:
    """a^(2^k)."""
    for _ in range(k):
        a = mul(spec, a, a)
    return a


def _check_divides(spec: FieldSpec, sub: int, sup: int):
    if sub < 1 or sup % sub or spec.n % sup:
        raise ValueError(f"need {sub} | {sup} | {spec.n}")


def trace(spec: FieldSpec, a: int, from_deg: int, to_deg: int) -> int:
    """Relative trace Tr_{to_deg}^{from_deg}(a) = a + a^(2^to) + ... + a^(2^(from - to)).

    ``a`` is taken as an element of the subfield F_{2^from_deg}.
    """
    _check_divides(spec, to_deg, from_deg)
    acc = 0
    for _ in range(from_deg // to_deg):
        acc ^= a
        a = frobenius(spec, a, to_deg)
    return acc


def trace_bit(spec: FieldSpec, a: int, from_deg: int | None = None) -> int:
    """Absolute trace Tr_1^{from_deg}(a) as 0 or 1."""
    value = trace(spec, a, spec.n if from_deg is None else from_deg, 1)
    if value not in (0, 1):
        raise ValueError(f"element {a:#x} does not lie in F_2^{from_deg}")
    return value


def in_subfield(spec: FieldSpec, a: int, deg: int) -> bool:
    _check_divides(spec, deg, spec.n)
    return frobenius(spec, a, deg) == a


def subfield_elements(spec: FieldSpec, deg: int) -> list[int]:
    """Elements of F_{2^deg} inside F_{2^n}, ascending by integer value."""
    return [a for a in range(spec.order) if in_subfield(spec, a, deg)]


def norm(spec: FieldSpec, a: int) -> int:
    """a^(2^m + 1), the relative norm down to F_{2^m}."""
    return mul(spec, a, frobenius(spec, a, spec.m))


def unit_circle(spec: FieldSpec) -> list[int]:
    return [u for u in range(1, spec.order) if norm(spec, u) == 1]


def decompose_uv(spec: FieldSpec, a: int) -> tuple[int, int]:
    """Split nonzero a as u*v with u^(2^m+1) = 1 and v in F_{2^m}^*.

    norm(a) = v^2, so v is the square root of the norm inside F_{2^m}.
    """
    if a == 0:
        raise ValueError("0 has no unit-circle decomposition")
    v = frobenius(spec, norm(spec, a), spec.m - 1)
    return mul(spec, a, inverse(spec, v)), v


def quadratic_solvable(spec: FieldSpec, a: int, b: int) -> bool:
    """Whether x^2 + a x + b has a root in GF(2^n), for a != 0."""
    if a == 0:
        raise ValueError("linear coefficient must be nonzero")
    return trace_bit(spec, mul(spec, b, inverse(spec, mul(spec, a, a)))) == 0


@lru_cache(maxsize=64)
def trace_table(spec: FieldSpec) -> bytes:
    """Tr_1^n(y) for every y, indexed by y.  The trace is GF(2)-linear, so a bit mask suffices."""
    mask = 0
    for i in range(spec.n):
        mask |= trace_bit(spec, 1 << i) << i
    return bytes(bin(y & mask).count("1") & 1 for y in range(spec.order))
