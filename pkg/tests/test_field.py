import pytest
from hypothesis import given, settings, strategies as st

from sparkdict import field
from sparkdict.field import FieldSizeError

from conftest import clmul, slow_mul


def reducible_sieve(n):
    """All reducible degree-n polynomials as products of lower-degree ones."""
    out = set()
    for d in range(1, n // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            for g in range(1 << (n - d), 1 << (n - d + 1)):
                out.add(clmul(f, g))
    return out


def smallest_irreducible_by_sieve(n):
    bad = reducible_sieve(n)
    return min(f for f in range(1 << n, 1 << (n + 1)) if f not in bad)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_irreducibility_matches_sieve(n):
    bad = reducible_sieve(n)
    for f in range(1 << n, 1 << (n + 1)):
        assert field.is_irreducible(f) == (f not in bad)


@pytest.mark.parametrize("r,t,modulus", [(1, 1, 0b111), (1, 2, 0b10011), (2, 1, 0b10011)])
def test_build_field_canonical_modulus(r, t, modulus):
    spec = field.build_field(r, t)
    assert spec.n == 2 * r * t
    assert spec.modulus == modulus == smallest_irreducible_by_sieve(spec.n)


def test_quadratic_modulus_has_no_roots():
    # x^2 + x + 1 at 0 and 1
    assert all((x * x + x + 1) % 2 == 1 for x in (0, 1))


def test_size_cap(monkeypatch):
    with pytest.raises(FieldSizeError, match="n <= 20"):
        field.build_field(11, 1)
    monkeypatch.setenv(field.MAX_DEGREE_ENV, "4")
    with pytest.raises(FieldSizeError, match="n <= 4"):
        field.build_field(1, 3)


def test_rejects_bad_modulus():
    with pytest.raises(ValueError):
        field.build_field(1, 2, modulus=0b10101)  # (x^2+x+1)^2
    with pytest.raises(ValueError):
        field.build_field(0, 1)


def test_mul_examples():
    gf4 = field.build_field(1, 1)
    assert field.mul(gf4, 0b10, 0b10) == 0b11
    for b in range(4):
        assert field.mul(gf4, 0, b) == 0
        assert field.mul(gf4, 1, b) == b


@pytest.mark.parametrize("rt", [(1, 1), (1, 2), (2, 2)])
def test_mul_matches_schoolbook(rt):
    spec = field.build_field(*rt)
    for a in range(spec.order):
        for b in range(0, spec.order, 3):
            assert field.mul(spec, a, b) == slow_mul(a, b, spec.modulus)


def test_pow_examples():
    gf4 = field.build_field(1, 1)
    assert field.pow(gf4, 0b10, 3) == 1
    assert field.pow(gf4, 0, 0) == 1
    assert field.pow(gf4, 0b11, 0) == 1


@pytest.mark.parametrize("rt", [(1, 1), (1, 2), (1, 3), (2, 2)])
def test_lagrange(rt):
    spec = field.build_field(*rt)
    for a in range(1, spec.order):
        assert field.pow(spec, a, spec.order - 1) == 1
        assert field.mul(spec, a, field.inverse(spec, a)) == 1


def test_trace_examples():
    gf4 = field.build_field(1, 1)
    assert field.trace(gf4, 0b10, 2, 1) == 1
    assert field.trace(gf4, 0, 2, 1) == 0
    assert field.trace_bit(gf4, 0) == 0
    with pytest.raises(ValueError):
        field.trace(field.build_field(1, 3), 1, 6, 4)


@pytest.mark.parametrize("rt", [(1, 2), (1, 3), (2, 2)])
def test_trace_fibers_and_character_sum(rt):
    spec = field.build_field(*rt)
    for to in [d for d in range(1, spec.n + 1) if spec.n % d == 0]:
        counts = {}
        for a in range(spec.order):
            c = field.trace(spec, a, spec.n, to)
            assert field.in_subfield(spec, c, to)
            counts[c] = counts.get(c, 0) + 1
        assert len(counts) == 1 << to
        assert set(counts.values()) == {1 << (spec.n - to)}
    assert sum((-1) ** field.trace_bit(spec, x) for x in range(spec.order)) == 0


@pytest.mark.parametrize("rt", [(1, 2), (2, 2), (1, 4)])
def test_trace_transitivity(rt):
    spec = field.build_field(*rt)
    for mid in [d for d in range(1, spec.n + 1) if spec.n % d == 0]:
        for a in range(spec.order):
            inner = field.trace(spec, a, spec.n, mid)
            assert field.trace_bit(spec, a) == field.trace_bit(spec, inner, mid)


def test_trace_table_matches_trace():
    spec = field.build_field(1, 3)
    table = field.trace_table(spec)
    assert all(table[a] == field.trace_bit(spec, a) for a in range(spec.order))


@pytest.mark.parametrize("rt", [(1, 1), (1, 2), (1, 3), (2, 2)])
def test_subfield_sizes(rt):
    spec = field.build_field(*rt)
    for d in [d for d in range(1, spec.n + 1) if spec.n % d == 0]:
        members = [a for a in range(spec.order) if field.in_subfield(spec, a, d)]
        assert len(members) == 1 << d
        assert 0 in members and 1 in members
    with pytest.raises(ValueError):
        field.in_subfield(spec, 1, spec.n + 1)


def test_generator_not_in_prime_field():
    assert not field.in_subfield(field.build_field(1, 1), 0b10, 1)


@pytest.mark.parametrize("rt", [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2)])
def test_unit_circle(rt):
    spec = field.build_field(*rt)
    circle = field.unit_circle(spec)
    assert 1 in circle
    assert len(circle) == (1 << spec.m) + 1
    assert all(field.frobenius(spec, u, spec.m) in circle for u in circle)


@pytest.mark.parametrize("rt", [(1, 2), (2, 1), (1, 3)])
def test_decompose_uv_is_a_bijection(rt):
    spec = field.build_field(*rt)
    seen = set()
    for a in range(1, spec.order):
        u, v = field.decompose_uv(spec, a)
        assert field.pow(spec, u, (1 << spec.m) + 1) == 1
        assert v != 0 and field.frobenius(spec, v, spec.m) == v
        assert field.mul(spec, u, v) == a
        seen.add((u, v))
    assert len(seen) == spec.order - 1
    assert field.decompose_uv(spec, 1) == (1, 1)
    for a in field.subfield_elements(spec, spec.m)[1:]:
        assert field.decompose_uv(spec, a) == (1, a)
    with pytest.raises(ValueError):
        field.decompose_uv(spec, 0)


def test_quadratic_solvable_against_root_search():
    spec = field.build_field(1, 2)
    cases = 0
    for a in range(1, 16):
        for b in range(16):
            has_root = any(field.mul(spec, x, x) ^ field.mul(spec, a, x) ^ b == 0 for x in range(16))
            assert field.quadratic_solvable(spec, a, b) == has_root
            cases += 1
    assert cases == 240
    gf4 = field.build_field(1, 1)
    assert field.quadratic_solvable(gf4, 0b10, field.mul(gf4, 0b10, 0b10))
    assert field.quadratic_solvable(gf4, 1, 0)
    with pytest.raises(ValueError):
        field.quadratic_solvable(spec, 0, 1)


SPEC8 = field.build_field(2, 2)
elements = st.integers(0, SPEC8.order - 1)


@settings(max_examples=300, deadline=None)
@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    mul = lambda x, y: field.mul(SPEC8, x, y)
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b ^ c) == mul(a, b) ^ mul(a, c)


@settings(max_examples=200, deadline=None)
@given(elements, elements)
def test_trace_linearity(a, b):
    for to in (1, 2, 4, 8):
        tr = lambda x: field.trace(SPEC8, x, 8, to)
        assert tr(a ^ b) == tr(a) ^ tr(b)
        assert tr(field.frobenius(SPEC8, a, to)) == tr(a)
        for c in field.subfield_elements(SPEC8, to):
            assert tr(field.mul(SPEC8, c, a)) == field.mul(SPEC8, c, tr(a))


def test_spec_json_roundtrip():
    spec = field.build_field(1, 2)
    assert spec.to_json() == {"n": 4, "r": 1, "t": 2, "modulus_hex": "13"}
    assert field.FieldSpec.from_json(spec.to_json()) == spec
