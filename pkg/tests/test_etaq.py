from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from conftest import PROPERTY
from overq import etaq
from overq.etaq import Cusp, EtaQuotient, cusp_orders, cusp_set, ligozat_order, newman_check, normalize_cusp
from overq.errors import CuspNotOnLevel, HypothesisViolated
from overq.hauptmodul import ETA_FORMS

G8 = ETA_FORMS["G8"][1]
G2 = ETA_FORMS["G2"][1]
F = ETA_FORMS["F"][1]


def egcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = egcd(b, a % b)
    return g, y, x - (a // b) * y


def equivalent(a, c, a2, c2, N, bound=400):
    """Search for [[x, y], [N t, w]] in Gamma0(N) sending a/c to a2/c2 (c, c2 >= 1)."""
    for t in range(-bound, bound + 1):
        z = N * t
        for sgn in (1, -1):
            num = sgn * c2 - z * a
            if num % c:
                continue
            w = num // c
            g, x, y = egcd(w, -z)
            if abs(g) != 1:
                continue
            x, y = x * g, y * g  # x w - y z = 1
            top = x * a + y * c
            if (top - sgn * a2) % c2 == 0:
                return True
    return False


def test_divisors_and_phi():
    assert etaq.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [etaq.euler_phi(n) for n in range(1, 10)] == [1, 1, 2, 2, 4, 2, 6, 4, 6]


def test_euler_product_pentagonal():
    e = etaq.euler_product(12)
    assert e.coeffs == (1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1)
    assert etaq.euler_product(6, 2).coeffs == (1, 0, -1, 0, -1, 0, 0)


def test_expansions():
    phi = etaq.eta_expansion(EtaQuotient(2, {2: 1, 1: -2}), 7)
    assert phi.coeffs == (1, 2, 4, 8, 14, 24, 40, 64)
    assert phi.offset == 0
    g8 = etaq.eta_series(G8, 6)
    assert g8.coeffs == (0, 1, 4, 12, 32, 78, 176)
    assert etaq.eta_expansion(etaq.eta(1), 3).offset == Fraction(1, 24)
    assert etaq.eta_expansion(G8, 4, 3).modulus_exp == 3


def test_quotient_algebra():
    e = etaq.eta(2) / etaq.eta(1) ** 2
    assert e.level == 2 and dict(e.exponents) == {1: -2, 2: 1}
    assert G8.at_level(16).level == 16
    with pytest.raises(ValueError):
        EtaQuotient(6, {4: 1})
    with pytest.raises(ValueError):
        G8.at_level(12)


@pytest.mark.parametrize("tag", ["G2", "G8", "F", "G2Neg", "G8Neg", "Eta4OverEta1Pow8"])
def test_newman_passes(tag):
    assert newman_check(ETA_FORMS[tag][1]).passed


def test_newman_lists_failing_conditions():
    v = newman_check(EtaQuotient(2, {2: 1, 1: -2}))
    assert not v.passed
    assert v.to_dict() == {"c1": True, "c2": False, "c3": False, "c4": False, "pass": False}
    assert not newman_check(EtaQuotient(3, {1: 1, 3: -1})).weighted_sum


@pytest.mark.parametrize("N,count", [(1, 1), (2, 2), (4, 3), (8, 4), (9, 4), (12, 6), (16, 6), (18, 8)])
def test_cusp_counts(N, count):
    assert len(cusp_set(N)) == count == sum(etaq.euler_phi(gcd(d, N // d)) for d in etaq.divisors(N))


def test_cusp_widths():
    assert [(str(c), c.width) for c in cusp_set(8)] == [("0/1", 8), ("1/2", 2), ("1/4", 1), ("1/8", 1)]
    assert normalize_cusp("inf", 8).is_infinity


@pytest.mark.parametrize("N", [4, 8, 9, 12, 16, 18])
def test_normalization_matches_matrix_search(N):
    reps = cusp_set(N)
    for c in range(1, 25):
        for a in range(-c, 2 * c):
            if gcd(a, c) != 1:
                continue
            r = normalize_cusp((a, c), N)
            assert r in reps
            assert equivalent(a, c, r.num, r.den, N), (a, c, r)
    for i, r in enumerate(reps):
        for s in reps[i + 1:]:
            assert not equivalent(r.num, r.den, s.num, s.den, N)


def test_ligozat_orders():
    assert [o for _, o in cusp_orders(G8).orders] == [-1, 0, 0, 1]
    assert [o for _, o in cusp_orders(G2.at_level(8)).orders] == [-4, 2, 1, 1]
    assert [o for _, o in cusp_orders(G2).orders] == [-1, 1]
    with pytest.raises(CuspNotOnLevel):
        ligozat_order(G8, Cusp(3, 1, 8))


def _index(N):
    out = Fraction(N)
    for p in etaq.divisors(N):
        if p > 1 and all(p % q for q in range(2, p)):
            out *= Fraction(p + 1, p)
    return out


@pytest.mark.parametrize("tag", sorted(ETA_FORMS))
def test_valence_formula(tag):
    e = ETA_FORMS[tag][1]
    weight = Fraction(sum(m for _, m in e.exponents), 2)
    assert cusp_orders(e).total() == weight / 12 * _index(e.level)
    # order at infinity is the leading exponent of the expansion
    assert etaq.order_at(e, None) == e.offset


def test_gordon_hughes():
    bounds = {str(c): etaq.gordon_hughes_bound(F, 2, 8, c) for c in cusp_set(8)}
    assert bounds["0/1"] == -1
    assert bounds["1/8"] == 0
    assert etaq.gordon_hughes_bound(G2, 2, 2, Fraction(0)) == -2
    assert etaq.gordon_hughes_bound(G2, 2, 2, None) == Fraction(1, 2)
    with pytest.raises(HypothesisViolated):
        etaq.gordon_hughes_bound(G8, 3, 8, 0)
    with pytest.raises(HypothesisViolated):
        etaq.gordon_hughes_bound(EtaQuotient(2, {2: 1, 1: -2}), 2, 2, 0)


def test_report_json_shape():
    d = cusp_orders(G8).to_dict()
    assert d[0] == {"num": 0, "den": 1, "width": 8, "order_num": -1, "order_den": 1}


@PROPERTY
@given(
    st.sampled_from([2, 4, 6, 8, 9, 12, 16, 18, 24]),
    st.integers(-30, 30),
    st.integers(1, 40),
    st.integers(-6, 6),
    st.integers(-6, 6),
)
def test_normalization_is_gamma0_invariant(N, a, c, t, w):
    # gamma = [[x, y], [N t, w]] acting on a/c
    z = N * t
    g, x, y = egcd(w, -z)
    if abs(g) != 1 or gcd(a, c) != 1:
        return
    x, y = x * g, y * g
    top, bot = x * a + y * c, z * a + w * c
    assert normalize_cusp((a, c), N) == normalize_cusp((top, bot), N) if bot else normalize_cusp((a, c), N).is_infinity
