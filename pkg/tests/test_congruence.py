import json

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import PROPERTY
from overq import congruence as cg
from overq.errors import BudgetExceeded, CounterexampleFound, EvenModulus

ODD = st.integers(1, 2001).filter(lambda b: b % 2)


def test_bruteforce_small_values():
    assert [cg.overpartition_bruteforce(n) for n in range(8)] == [1, 2, 4, 8, 14, 24, 40, 64]
    assert cg.overpartition_bruteforce(30) == 116624
    with pytest.raises(BudgetExceeded):
        cg.overpartition_bruteforce(cg.BRUTEFORCE_LIMIT + 1)


def test_table_matches_enumeration():
    t = cg.overpartition_table(30)
    assert list(t.values) == [cg.overpartition_bruteforce(n) for n in range(31)]
    assert t[3] == 8


def test_reduced_tables_agree():
    exact = cg.overpartition_table(3000)
    for K in (1, 5, 17, 40, 45):
        t = cg.overpartition_table(3000, K)
        assert t.values == tuple(v % (1 << K) for v in exact.values)


def test_table_cache_reuse():
    cg.clear_cache()
    a = cg.overpartition_table(500)
    b = cg.overpartition_table(200, 8)
    assert b.values == tuple(v % 256 for v in a.values[:201])
    with pytest.raises(BudgetExceeded):
        cg.overpartition_table(cg.EXACT_BUDGET + 1)


def test_overpartitions_are_even():
    t = cg.overpartition_table(2000, 3)
    assert all(v % 2 == 0 for v in t.values[1:])


def test_jacobi_basics():
    assert cg.jacobi(2, 7) == 1 and cg.jacobi(3, 7) == -1 and cg.jacobi(0, 3) == 0 and cg.jacobi(5, 1) == 1
    with pytest.raises(EvenModulus):
        cg.jacobi(1, 8)


def test_claims_validate_primes():
    with pytest.raises(ValueError):
        cg.CongruenceClaim("scan", 9, 0, None, 10)
    with pytest.raises(ValueError):
        cg.CongruenceClaim("scan", 2, 0, None, 10)


@pytest.mark.parametrize("ell", [3, 5])
@pytest.mark.parametrize("alpha", [0, 1, 2, 3])
def test_main_congruence_small(ell, alpha):
    rep = cg.verify_main_congruence(ell, alpha, 60)
    assert rep.passed and rep.checked == 61
    assert rep.raise_if_failed() is rep


def test_scan_covers_base_modulus():
    scan = cg.scan_max_power(3, 0, 200)
    assert scan.max_valid_K >= 12


def test_vacuous_range():
    rep = cg.verify_main_congruence(3, 1, 0)
    assert rep.passed and rep.checked == 1


def test_progressions():
    assert cg.verify_progression(3, 4, 3, 4000).passed
    assert cg.verify_progression(7, 8, 6, 4000).passed
    rep = cg.verify_progression(7, 8, 7, 4000)
    assert not rep.passed and rep.counterexample["n"] == 7
    with pytest.raises(CounterexampleFound):
        rep.raise_if_failed()
    d = json.loads(rep.to_json())
    assert d["counterexample"] == {"n": 7, "lhs": "64", "rhs": "0"}


def test_corollary():
    rep = cg.verify_corollary_congruence(3, 1, 300)
    assert rep.passed and rep.notes["literal_applies"] is False
    big = cg.verify_corollary_congruence(8191, 1, 10)
    assert big.verdict == "unverified" and not big.passed
    assert big.notes["literal_applies"] is True
    assert big.notes["smallest_literal_index"] == str(2 * 8191**3)


def test_scan_reproductions():
    r = cg.scan_max_power(3, 2, 1000)
    assert r.max_valid_K >= 20 and r.notes["witness_n"] >= 0
    assert r.to_dict()["max_valid_K"] == r.max_valid_K
    with pytest.raises(BudgetExceeded):
        cg.scan_max_power(3, 6, 1000, budget=1000)


def test_garvan_morrow():
    fit3 = cg.fit_garvan_morrow(3, 200)
    assert fit3.coeffs == {1: 1}
    fit5 = cg.fit_garvan_morrow(5, 200)
    assert fit5.coeffs == {1: 948, 2: 73, 3: 1}
    assert fit5.to_dict()["a"] == {"1": "948", "2": "73", "3": "1"}


@PROPERTY
@given(st.integers(-5000, 5000), ODD)
def test_jacobi_matches_sympy(a, b):
    assert cg.jacobi(a, b) == sympy.jacobi_symbol(a, b)


@PROPERTY
@given(st.integers(-500, 500), st.integers(-500, 500), ODD)
def test_jacobi_multiplicative_in_top(a, c, b):
    assert cg.jacobi(a * c, b) == cg.jacobi(a, b) * cg.jacobi(c, b)


@PROPERTY
@given(st.integers(-500, 500), ODD, ODD)
def test_jacobi_multiplicative_in_bottom(a, b, c):
    assert cg.jacobi(a, b * c) == cg.jacobi(a, b) * cg.jacobi(a, c)


@PROPERTY
@given(st.integers(-500, 500), ODD, st.integers(-20, 20))
def test_jacobi_periodic(a, b, k):
    assert cg.jacobi(a + k * b, b) == cg.jacobi(a, b)


@PROPERTY
@given(ODD.filter(lambda b: b > 1), ODD.filter(lambda b: b > 1))
def test_quadratic_reciprocity(a, b):
    from math import gcd

    if gcd(a, b) != 1:
        return
    sign = -1 if a % 4 == 3 and b % 4 == 3 else 1
    assert cg.jacobi(a, b) * cg.jacobi(b, a) == sign
