import json
import math

import networkx as nx
import pytest
from hypothesis import given, settings

from distspec import (
    BOUND_IDS,
    BoundReport,
    Graph,
    bound_eq4,
    bound_eq5_eq6,
    bound_eq7,
    bound_eq11,
    bound_eq14,
    bound_eq19,
    d_eigenvalues,
    detect_equality_cases,
    distance_profile,
    evaluate_all,
    evaluate_graph,
    generate_family,
    mu1_lower_chain,
    mu1_lower_power,
    mu1_lower_size,
    power_sequence,
)
from distspec.bounds import REPORT_FIELDS, check_chains

from conftest import connected_graphs

E = math.e
P4 = generate_family("path", 4)
C4 = generate_family("cycle", 4)
K2 = generate_family("complete", 2)
K3 = generate_family("complete", 3)
DEE_P4 = math.fsum(math.exp(x) for x in (2 + 10**0.5, -2 + 2**0.5, 2 - 10**0.5, -2 - 2**0.5))
DEE_C4 = math.exp(4) + 1 + 2 * math.exp(-2)


def dee_complete(n):
    return math.exp(n - 1) + (n - 1) * math.exp(-1)


def by_id(reports):
    return {r.bound_id: r for r in reports}


class TestScalarBounds:
    def test_eq4(self):
        lo, _ = bound_eq4(4, 3, 3)
        assert lo == pytest.approx(math.sqrt(28)) and round(lo, 3) == pytest.approx(5.292)
        assert bound_eq4(1, 0, 0) == (1.0, 1.0)
        lo, hi = bound_eq4(2, 1, 1)
        assert lo == pytest.approx(math.sqrt(8)) and hi == pytest.approx(1 + math.exp(math.sqrt(2)))
        assert lo <= 2 * math.cosh(1) <= hi

    def test_eq4_upper_saturates(self):
        assert bound_eq4(256, 300, 40)[1] == math.inf

    def test_eq5_eq6(self):
        assert bound_eq5_eq6(1, 0, 0.0) == (1.0, 1.0)
        assert bound_eq5_eq6(2, 1, 2.0)[1] == pytest.approx(1 + E**2)
        eq6 = bound_eq5_eq6(4, 3, 2 * (2 + 10**0.5))[1]
        assert eq6 == pytest.approx(3 + math.exp(2 * (2 + 10**0.5)))
        assert 30_000 < eq6 < 31_000
        with pytest.raises(ValueError):
            bound_eq5_eq6(2, 1, -1.0)

    def test_mu1_lower_power(self):
        dp = distance_profile(P4)
        ps = power_sequence(dp, 1.0, 3)
        assert mu1_lower_power(ps, 2) == pytest.approx(math.sqrt(73760 / 2768), rel=1e-15)
        assert mu1_lower_power(ps, 2) == pytest.approx(5.162112, abs=5e-7)
        assert 2 + 10**0.5 - mu1_lower_power(ps, 2) < 2.4e-4
        assert mu1_lower_power(ps, 1) == pytest.approx(5.159010, abs=5e-7)
        assert mu1_lower_power(ps, 1) <= mu1_lower_power(ps, 2)
        with pytest.raises(IndexError):
            mu1_lower_power(ps, 3)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_mu1_lower_power_complete(self, n):
        ps = power_sequence(distance_profile(generate_family("complete", n)), 0.7, 4)
        for t in (1, 2, 3):
            assert mu1_lower_power(ps, t) == pytest.approx(n - 1, rel=1e-14)

    def test_mu1_lower_chain(self):
        r1, r2, r3 = mu1_lower_chain(distance_profile(P4))
        assert (r1, r2, r3) == pytest.approx((math.sqrt(2768 / 104), math.sqrt(26), 5.0))
        assert mu1_lower_chain(distance_profile(generate_family("complete", 6))) == pytest.approx((5, 5, 5))
        assert mu1_lower_chain(distance_profile(C4))[2] == 4
        with pytest.raises(ValueError):
            mu1_lower_chain(distance_profile(Graph(1)))

    def test_mu1_lower_size(self):
        assert mu1_lower_size(4, 3) == 4.5
        assert mu1_lower_size(7, 21) == 6
        assert mu1_lower_size(4, 4) == 4

    def test_eq7(self):
        ps = power_sequence(distance_profile(P4), 1.0, 3)
        assert bound_eq7(4, mu1_lower_power(ps, 2)) == pytest.approx(175.069, abs=5e-4)
        for n in (2, 3, 7):
            assert bound_eq7(n, n - 1) == pytest.approx(dee_complete(n), rel=1e-14)
        assert bound_eq7(2, 1) == pytest.approx(E + 1 / E)
        for bad in (0.0, -1.0):
            with pytest.raises(ValueError):
                bound_eq7(4, bad)
        with pytest.raises(ValueError):
            bound_eq7(1, 1.0)

    def test_eq11(self):
        for n in (2, 3, 9):
            assert bound_eq11(n, n * (n - 1) // 2) == pytest.approx(dee_complete(n), rel=1e-14)
        assert bound_eq11(4, 10) == pytest.approx(E**5 + 3 * math.exp(-5 / 3))
        assert bound_eq11(4, 10) == pytest.approx(148.979, abs=1e-3)
        assert bound_eq11(4, 10) <= DEE_P4
        assert bound_eq11(4, 8) == pytest.approx(55.388, abs=1e-3)
        assert bound_eq11(4, 8) <= DEE_C4

    def test_eq14(self):
        assert bound_eq14(4, 3) == pytest.approx(math.exp(4.5) + math.exp(-4.5) + 2)
        assert bound_eq14(4, 3) == pytest.approx(92.028, abs=5e-4)
        assert bound_eq14(2, 1) == pytest.approx(E + 1 / E)
        with pytest.raises(ValueError):
            bound_eq14(1, 0)

    def test_eq14_exceeds_dee_k3(self):
        # the "lower bound" is larger than the true value on K_3
        bound = bound_eq14(3, 3)
        assert bound == pytest.approx(E**2 + E**-2 + 1)
        assert bound - dee_complete(3) == pytest.approx(0.39958, abs=1e-5)

    def test_eq19(self):
        e_d = 2 * (2 + 10**0.5)
        lo, hi = bound_eq19(4, 1, e_d)
        assert lo == pytest.approx(11.870, abs=5e-4)
        assert hi == pytest.approx(3 + math.exp(e_d / 2))
        assert bound_eq19(1, 0, 0.0) == (1.0, 1.0)
        lo, hi = bound_eq19(2, 1, 2.0)
        assert lo == pytest.approx(E) and hi == pytest.approx(1 + E)
        assert lo <= 2 * math.cosh(1) <= hi
        with pytest.raises(ValueError):
            bound_eq19(3, 4, 1.0)


class TestBoundReport:
    def test_lower_and_upper_slack(self):
        lo = BoundReport.compare("EQ7", 3.0, 5.0)
        assert lo.kind == "lower" and lo.slack == 2.0 and lo.satisfied and not lo.equality
        hi = BoundReport.compare("EQ6", 3.0, 5.0)
        assert hi.kind == "upper" and hi.slack == -2.0 and not hi.satisfied

    def test_tolerance_band(self):
        r = BoundReport.compare("EQ7", 1.0 + 5e-7, 1.0)
        assert r.satisfied and r.equality
        r = BoundReport.compare("EQ7", 1.0 + 2e-6, 1.0)
        assert not r.satisfied and not r.equality

    def test_serialises_with_exact_field_names(self):
        r = BoundReport.compare("EQ7", 1.0, 2.0, alpha=1.0, t=2)
        d = r.to_dict()
        assert tuple(d) == REPORT_FIELDS
        assert tuple(d) == ("bound_id", "kind", "bound_value", "actual_value", "satisfied", "slack",
                            "equality", "alpha", "t")
        assert json.loads(json.dumps(d)) == d


class TestEqualityCases:
    def test_k5(self):
        g = generate_family("complete", 5)
        flags = detect_equality_cases(g, distance_profile(g))
        assert flags["is_complete"] and flags["two_distinct_d_eigenvalues"]

    def test_c5(self):
        g = generate_family("cycle", 5)
        flags = detect_equality_cases(g, distance_profile(g))
        assert flags["is_regular_diameter_two"] and not flags["is_complete"]

    def test_p4(self):
        flags = detect_equality_cases(P4, distance_profile(P4))
        assert not any(flags.values())

    def test_petersen_regular_diameter_two(self):
        G = nx.petersen_graph()
        g = Graph(10, G.edges())
        dp = distance_profile(g)
        flags = detect_equality_cases(g, dp)
        assert flags["is_regular_diameter_two"]
        assert d_eigenvalues(dp).mu1 == pytest.approx(mu1_lower_size(10, 15), abs=1e-12)


class TestEvaluateAll:
    def test_p4_reference_values(self):
        reports = evaluate_all(P4)
        assert [r.bound_id for r in reports] == list(BOUND_IDS)
        r = by_id(reports)
        assert r["EQ7"].bound_value == pytest.approx(175.069, abs=5e-4)
        assert r["EQ14"].bound_value == pytest.approx(92.028, abs=5e-4)
        assert r["EQ19_LOWER"].bound_value == pytest.approx(11.870, abs=5e-4)
        assert r["EQ4_LOWER"].bound_value == pytest.approx(math.sqrt(28))
        assert all(x.satisfied and not x.equality for x in reports)
        assert r["EQ7"].actual_value == pytest.approx(DEE_P4, rel=1e-13)
        assert r["EQ7"].slack == pytest.approx(0.39446, abs=1e-5)
        assert r["EQ7"].alpha == 1.0 and r["EQ7"].t == 2
        assert r["MU1_LEMMA23"].actual_value == pytest.approx(2 + 10**0.5)

    def test_ordering_between_bounds_on_p4(self):
        r = by_id(evaluate_all(P4))
        assert r["EQ7"].bound_value > r["EQ11"].bound_value > r["EQ14"].bound_value
        assert r["EQ14"].bound_value > r["EQ19_LOWER"].bound_value > r["EQ4_LOWER"].bound_value
        # the energy-based upper bound improves on the e^(E_D) one
        assert r["EQ19_UPPER"].bound_value < r["EQ6"].bound_value

    @pytest.mark.parametrize("n", range(2, 13))
    def test_complete_equalities(self, n):
        r = by_id(evaluate_all(generate_family("complete", n)))
        assert r["EQ7"].equality and r["EQ11"].equality
        assert r["MU1_LEMMA23"].equality and r["MU1_LEMMA21"].equality

    def test_k2_eq14_equality(self):
        assert by_id(evaluate_all(K2))["EQ14"].equality

    def test_k1(self):
        reports = evaluate_all(Graph(1))
        assert [r.bound_id for r in reports] == ["EQ4_LOWER", "EQ4_UPPER", "EQ5", "EQ6", "EQ19_LOWER", "EQ19_UPPER"]
        assert all(r.equality for r in reports)
        assert all(r.actual_value == 1.0 for r in reports)

    def test_k3_eq14_reported_not_hidden(self):
        r = by_id(evaluate_all(K3))["EQ14"]
        assert not r.satisfied and r.known_open
        assert r.slack == pytest.approx(-0.39958, abs=1e-5)

    def test_alpha_and_t_forwarded(self):
        r = by_id(evaluate_all(P4, alpha=0.5, t=3))
        assert r["MU1_LEMMA21"].alpha == 0.5 and r["MU1_LEMMA21"].t == 3
        ps = power_sequence(distance_profile(P4), 0.5, 4)
        assert r["MU1_LEMMA21"].bound_value == pytest.approx(mu1_lower_power(ps, 3))

    def test_disconnected_rejected(self):
        from distspec import DisconnectedGraphError
        with pytest.raises(DisconnectedGraphError):
            evaluate_all(Graph(3, [(0, 1)]))


class TestChains:
    @settings(max_examples=150, deadline=None)
    @given(connected_graphs(max_n=11))
    def test_valid_bounds_and_chains_hold(self, g):
        ev = evaluate_graph(g)
        assert ev.chain_failures == ()
        for r in ev.reports:
            if not r.known_open:
                assert r.satisfied, r
            if r.equality:
                assert r.satisfied

    @settings(max_examples=80, deadline=None)
    @given(connected_graphs(min_n=2, max_n=10))
    def test_equality_propagation(self, g):
        ev = evaluate_graph(g)
        r = by_id(ev.reports)
        if ev.flags["is_complete"]:
            assert r["EQ7"].equality and r["EQ11"].equality
        if ev.flags["is_K2"]:
            assert r["EQ14"].equality
        assert ev.flags["two_distinct_d_eigenvalues"] == ev.flags["is_complete"]

    def test_check_chains_reports_broken_flag(self):
        dp = distance_profile(P4)
        spec = d_eigenvalues(dp)
        flags = dict(detect_equality_cases(P4, dp, spec), is_regular_diameter_two=True)
        assert "SIZE_BOUND_EQUALITY_CLAUSE" in check_chains(dp, spec, flags)

    def test_monotone_transfer_on_chain(self):
        dp = distance_profile(P4)
        ps = power_sequence(dp, 1.0, 4)
        chain = [mu1_lower_power(ps, 3), mu1_lower_power(ps, 2), *mu1_lower_chain(dp)]
        values = [bound_eq7(4, x) for x in chain]
        assert values == sorted(values, reverse=True)
