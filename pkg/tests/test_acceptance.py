"""Exit criteria.  Each test prints one PASS/FAIL line; run with ``pytest -s`` to see them."""

import math
import time
from fractions import Fraction

import pytest

from sparkdict import certify as C
from sparkdict import construct, field, oracle, recover

GRID = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]
SPARKS = {(1, 1): 3, (1, 2): 6, (2, 1): 5, (1, 3): 12, (3, 1): 9}


def report(name, ok, detail=""):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def dicts():
    return {rt: construct.build_dictionary(field.build_field(*rt)) for rt in GRID}


def test_1_coherence_exact(dicts):
    t0 = time.perf_counter()
    values = {rt: C.mutual_coherence(D) for rt, D in dicts.items()}
    elapsed = time.perf_counter() - t0
    ok = all(values[(r, t)] == Fraction(1, 2 ** (t * r)) for r, t in GRID) and elapsed <= 10
    report("1 coherence = 1/2^(tr)", ok, f"{ {k: str(v) for k, v in values.items()} } in {elapsed:.2f}s")


def test_2_spark_certificates():
    got = {}
    for r, t in GRID:
        cert = C.certify(field.build_field(r, t), run_lemmas=False)
        q = 2**r
        assert math.ceil(cert.bound_gribonval_nielsen) == cert.upper_bound
        got[(r, t)] = cert.concluded_spark
        assert cert.concluded_spark == q**t + q ** (t - 1)
    report("2 spark certificates", got == SPARKS, str(got))


def test_3a_oracle_gf4(dicts):
    rep = oracle.brute_spark(dicts[1, 1], 3)
    ok = rep.spark == 3 and rep.elapsed < 1 and C.verify_witness(dicts[1, 1], rep.witness)[0]
    report("3a oracle (1,1)", ok, f"spark {rep.spark} in {rep.elapsed:.3f}s")


def test_3b_oracle_r2_t1(dicts):
    D = dicts[2, 1]
    rep = oracle.brute_spark(D, 4, prune=False)
    cert = C.certify(D.spec, run_lemmas=False)
    ok = (rep.spark is None and rep.lower_bound == 5 and rep.elapsed <= 300
          and rep.levels[-1] == {"k": 4, "examined": math.comb(80, 4)}
          and cert.concluded_spark == 5 and cert.upper_bound == 5)
    report("3b oracle (2,1)", ok,
           f"no dependent 4-subset among {rep.levels[-1]['examined']} ({rep.backend}, {rep.elapsed:.2f}s); witness size 5")


def test_3c_oracle_r1_t2(dicts):
    D = dicts[1, 2]
    rep = oracle.brute_spark(D, 6)
    ok = (rep.spark == 6 and rep.elapsed <= 1800 and C.verify_witness(D, rep.witness)[0]
          and rep.subsets_skipped == sum(math.comb(48, k) for k in (2, 3, 4)))
    report("3c oracle (1,2)", ok, f"spark {rep.spark}, {rep.subsets_examined} examined ({rep.backend}, {rep.elapsed:.2f}s)")


def test_4_lemma_suite():
    failures = []
    for rt in GRID:
        for chk in C.lemma_suite(field.build_field(*rt)):
            if not chk.passed:
                failures.append((rt, chk.name, chk.detail))
    report("4 lemma suite", not failures, str(failures) if failures else "all checks pass on the grid")


def test_4_lemma1_gf16_exhaustive():
    spec = field.build_field(1, 2)
    pairs = 0
    for a in range(1, 16):
        for b in range(16):
            root = any(field.mul(spec, x, x) ^ field.mul(spec, a, x) ^ b == 0 for x in range(16))
            assert field.quadratic_solvable(spec, a, b) == root
            pairs += 1
    report("4 lemma1 over GF(16)", pairs == 240, f"{pairs} pairs")


def test_5_dependence_witness(dicts):
    sizes = {}
    for rt, D in dicts.items():
        w = construct.dependent_set(D.spec)
        ok, size = C.verify_witness(D, w)
        assert ok
        sizes[rt] = size
    report("5 dependence witness", sizes == SPARKS, str(sizes))


def test_6_uniqueness_demo():
    a = recover.uniqueness_demo(field.build_field(1, 1), 100, seed=2024)
    b = recover.uniqueness_demo(field.build_field(1, 2), 50, seed=2024)
    ok = (a.k, a.successes, b.k, b.successes) == (1, 100, 2, 50)
    ok = ok and a.collision["same_vector"] and b.collision["same_vector"]
    ok = ok and (b.collision["trace_size"], b.collision["standard_size"]) == (4, 2)
    report("6 uniqueness demo", ok, f"{a.successes}/100 at k={a.k}, {b.successes}/50 at k={b.k}; collisions exhibited")


def test_7_representation_invariance():
    canonical = field.build_field(1, 2)
    other_mod = next(f for f in field.irreducible_polys(4) if f != canonical.modulus)
    alt = field.build_field(1, 2, modulus=other_mod)
    c1, c2 = C.certify(canonical), C.certify(alt)
    ok = (c1.coherence, c1.concluded_spark) == (c2.coherence, c2.concluded_spark) == (Fraction(1, 4), 6)
    ok = ok and c2.all_passed
    report("7 representation invariance", ok, f"moduli {canonical.modulus:#x} and {other_mod:#x}")
