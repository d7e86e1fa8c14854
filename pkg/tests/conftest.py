import pytest

from sparkdict import construct, field

GRID = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]
SMALL_GRID = [(1, 1), (1, 2), (2, 1)]


@pytest.fixture(scope="session")
def dictionaries():
    cache = {}

    def get(r, t):
        if (r, t) not in cache:
            cache[r, t] = construct.build_dictionary(field.build_field(r, t))
        return cache[r, t]

    return get


def clmul(a, b):
    """Carry-less product, written independently of the package."""
    out = 0
    i = 0
    while b >> i:
        if (b >> i) & 1:
            out ^= a << i
        i += 1
    return out


def slow_mul(a, b, modulus):
    """Schoolbook product followed by long division."""
    prod = clmul(a, b)
    deg = modulus.bit_length() - 1
    for shift in range(prod.bit_length() - 1 - deg, -1, -1):
        if (prod >> (shift + deg)) & 1:
            prod ^= modulus << shift
    return prod
