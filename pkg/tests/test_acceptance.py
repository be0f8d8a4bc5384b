"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line
that is printed in the pytest terminal summary."""
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE
from overq import bigseries as bs
from overq import congruence as cg
from overq import etaq
from overq import hauptmodul as hm
from overq import valuation as val

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(key, title, limit=None):
    info = {"detail": ""}
    start = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = limit is None or elapsed < limit
        ACCEPTANCE[key] = (ok and within, title, elapsed, limit, info["detail"])
    assert within, f"took {elapsed:.2f} s, limit {limit} s"


def test_1_oracle_agreement():
    cg.clear_cache()
    with criterion(1, "overpartition table vs enumeration", 1.0) as info:
        table = cg.overpartition_table(30)
        assert list(table.values) == [cg.overpartition_bruteforce(n) for n in range(31)]
        assert table[3] == 8
        info["detail"] = f"p(30) = {table[30]}"


def test_2_identity_suite():
    hm.build_named.cache_clear()
    with criterion(2, "modular equations and U2 actions to q^200", 10.0) as info:
        verdicts = hm.all_identities(200)
        assert all(v.passed and v.trunc >= 200 for v in verdicts), [v.to_dict() for v in verdicts if not v.passed]
        # P(x) itself, refitted from the q-series
        T = 200
        big = 2 * T + 1
        lhs = bs.u_p(hm.named("Phi2Neg", big) * hm.named("G2Neg", big), 2)
        phi_sq = bs.v_p(hm.named("Phi2Neg", T // 2 + 1), 2).truncate(T)
        assert hm.fit_in_basis(lhs * bs.series_invert(phi_sq), 9).as_dict() == hm.P_COEFFS
        info["detail"] = f"{len(verdicts)} identities"


def test_3_fit_rederivations():
    T = 200
    G2, G8 = hm.named("G2", T), hm.named("G8", T)
    with criterion(3, "constants re-derived by triangular fits"):
        u2 = lambda f: bs.u_p(f, 2)  # noqa: E731
        g2big, g8big = hm.named("G2", 2 * T + 1), hm.named("G8", 2 * T + 1)
        assert hm.fit_in_basis(u2(g2big), 2, generator=G2).as_dict() == {1: 24, 2: 2048}
        assert hm.fit_in_basis(u2(g8big), 2).as_dict() == {1: 4, 2: 16}
        assert hm.fit_in_basis(G2, 4, generator=G8).as_dict() == {1: 1, 2: 20, 3: 128, 4: 256}
        assert hm.fit_in_basis(u2(g8big * g8big), 4).as_dict() == {1: 1, 2: 36, 3: 256, 4: 512}


def test_4_cusp_calculus():
    forms = {tag: e for tag, (_, e) in hm.ETA_FORMS.items()}
    with criterion(4, "Newman, Ligozat, valence, Gordon-Hughes", 1.0):
        for tag in ("G2", "G8", "F"):
            assert etaq.newman_check(forms[tag]).passed, tag
        g8 = forms["G8"]
        assert etaq.order_at(g8, 0) == -1 and etaq.order_at(g8, None) == 1
        assert etaq.order_at(forms["G2"].at_level(8), 0) == -4
        for e in forms.values():
            if etaq.newman_check(e).passed:
                assert etaq.cusp_orders(e).total() == 0
                assert all(isinstance(o, Fraction) for _, o in etaq.cusp_orders(e).orders)
        assert etaq.gordon_hughes_bound(forms["F"], 2, 8, 0) == -1


def test_5_valuation_audits():
    with criterion(5, "2-adic bounds for s <= 3, alpha <= 6, j <= 20", 300.0) as info:
        J = 20
        t, u = val.t_table(J), val.u_table(J)
        for j in range(J + 1):
            assert t[j] == val.t_row_by_fit(j) and u[j] == val.u_row_by_fit(j), j
        towers = [val.l_tower(s, 6, certify=J) for s in (1, 2, 3)]
        report = val.audit_valuations([t, u], towers)
        deep = []
        for s in (1, 2, 3):
            deep += val.deep_tower_audit(s, 12, certify=J)
        full = val.AuditReport(report.entries + deep)
        full.raise_if_failed()
        info["detail"] = f"{len(full.entries)} entries, levels L1..L12"


def test_6_main_congruence():
    with criterion(6, "Hecke-type congruence mod 2^(alpha+12)", 600.0) as info:
        checked = 0
        for ell, n_max in ((3, 1000), (5, 200)):
            for alpha in range(4):
                rep = cg.verify_main_congruence(ell, alpha, n_max).raise_if_failed()
                checked += rep.checked
        info["detail"] = f"{checked} instances"


def test_7_power_scans():
    with criterion(7, "largest valid powers of 2") as info:
        found = {}
        for alpha, n_max, need in ((2, 1000, 20), (3, 500, 21), (4, 200, 24)):
            K = cg.scan_max_power(3, alpha, n_max).max_valid_K
            found[alpha] = K
            assert K >= need, (alpha, K)
        info["detail"] = ", ".join(f"alpha={a}: K={k}" for a, k in found.items())


def test_8_garvan_morrow_fit():
    with criterion(8, "integer a(s) with zero residual to q^500") as info:
        fits = {ell: cg.fit_garvan_morrow(ell, 500) for ell in (3, 5)}
        assert fits[3].coeffs == {1: 1}
        assert fits[5].coeffs == {1: 948, 2: 73, 3: 1}
        info["detail"] = f"ell=5: {fits[5].coeffs}"


def test_9_property_suites():
    import test_bigseries as tb
    import test_congruence as tc
    import test_hauptmodul as th

    suites = [
        tb.test_ring_axioms,
        tb.test_u_after_v_is_identity,
        tb.test_u_pulls_out_v_factor,
        tb.test_alternate_sign_is_ring_involution,
        tb.test_reduction_commutes_with_arithmetic,
        th.test_fit_round_trip,
        tc.test_jacobi_matches_sympy,
        tc.test_jacobi_multiplicative_in_top,
        tc.test_jacobi_multiplicative_in_bottom,
    ]
    with criterion(9, "randomized property suites") as info:
        for prop in suites:
            assert prop.hypothesis.inner_test is not None
            assert prop._hypothesis_internal_use_settings.max_examples >= 1000
            prop()
        info["detail"] = f"{len(suites)} suites x 1000 cases"
