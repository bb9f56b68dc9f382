from math import ceil, comb

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rainbow_bounds.errors import DomainError
from rainbow_bounds.graph import Graph, happy_triple_count
from rainbow_bounds.happy import (DpTable, brute_force_max_happy, build_dp_table, convex_argmin,
                                  extremal_construction, f_bound, f_real, golden_table1_text, read_table1,
                                  shape_key, table1_csv, verify_lemma)


@pytest.fixture(scope="module")
def table():
    return build_dp_table(103)


class TestConvexBound:
    def test_argmin_even(self):
        assert convex_argmin(4) == 2.5
        assert f_real(4, 2) == f_real(4, 3) == 4

    def test_argmin_odd(self):
        assert convex_argmin(5) == 3
        assert f_real(5, 3) == 6
        assert f_real(5, 2) == f_real(5, 4) == 7

    @pytest.mark.parametrize("k", [1, 2, 3, 7, 10, 31])
    def test_symmetry(self, k):
        for i in range(2 * k + 1):
            x = i / 2
            assert f_real(k, x) == pytest.approx(f_real(k, k + 1 - x))

    @given(st.integers(1, 200), st.floats(-50, 250, allow_nan=False))
    def test_unique_minimum(self, k, x):
        gap = f_real(k, x) - f_real(k, convex_argmin(k))
        # f_k(x) - f_k(x*) = (x - x*)^2 exactly
        assert gap == pytest.approx((x - convex_argmin(k)) ** 2, rel=1e-9, abs=1e-9)
        assert gap >= -1e-9

    def test_f_bound_matches_f_real(self):
        for k in range(1, 30):
            for l in range(1, k + 1):
                assert f_bound(k, l) == f_real(k, l)


class TestFBound:
    @pytest.mark.parametrize("k,l,expected", [(10, 5, 25), (3, 2, 2), (103, 52, 2652)])
    def test_table_values(self, k, l, expected):
        assert f_bound(k, l) == expected

    @pytest.mark.parametrize("k,l", [(5, 0), (5, 6)])
    def test_domain(self, k, l):
        with pytest.raises(DomainError):
            f_bound(k, l)


class TestDpTable:
    def test_small_entries(self, table):
        assert table[3, 2] == 2
        assert table[7, 4] == 12
        assert table[50, 25] == 625

    def test_l2_column(self, table):
        assert all(table[k, 2] == k for k in range(4, 104))

    def test_full_degree(self, table):
        assert all(table[k, l] == comb(k, 2) for k in range(104) for l in range(k, 104))

    def test_monotone(self, table):
        for k in range(104):
            for l in range(103):
                assert table[k, l] <= table[k, l + 1]
        for l in range(104):
            for k in range(103):
                assert table[k, l] <= table[k + 1, l]

    def test_witness_reproduces_entry(self, table):
        for k in range(3, 104):
            for l in range(3, k):
                j = table.witness_j[k][l]
                assert 1 <= j <= l
                assert table[k, l] == comb(j, 2) + k - j + table[k - j, j]

    def test_golden_table(self, table):
        golden = read_table1(golden_table1_text())
        assert len(golden) == 101
        assert table.table1_rows() == golden
        assert table1_csv(table.table1_rows()) == golden_table1_text()

    def test_supports_199(self):
        big = build_dp_table(199)
        assert big[199, 199] == comb(199, 2)
        assert big.table1_rows(103) == build_dp_table(103).table1_rows()
        assert verify_lemma(big) == []

    def test_domain(self):
        with pytest.raises(DomainError):
            build_dp_table(1)

    def test_kt3_regime_not_a_valid_graph(self, table):
        # for l = 3, k = 3t the table gives 3*C(t,2) + t*C(3,2) = happy count of K_{t,3},
        # which violates the degree cap once t >= 4
        for t in range(4, 10):
            kt3 = nx.complete_bipartite_graph(t, 3)
            g = Graph.from_edges(t + 3, kt3.edges)
            assert table[3 * t, 3] == happy_triple_count(g)
            assert g.max_degree() > 3


class TestVerifyLemma:
    def test_no_violations(self, table):
        assert verify_lemma(table) == []

    def test_equality_on_table_rows(self, table):
        for k in range(3, 104):
            l = ceil(k / 2)
            assert table[k, l] == f_bound(k, l)

    def test_fault_injection(self, table):
        rows = [list(r) for r in table.entries]
        rows[10][5] = 26
        bad = DpTable(table.k_max, tuple(map(tuple, rows)), table.witness_j)
        assert verify_lemma(bad) == [(10, 5, 26, 25)]


def _is_path(g: Graph) -> bool:
    nxg = nx.Graph(g.edges)
    return nx.is_connected(nxg) and sorted(d for _, d in nxg.degree) == [1, 1, 2, 2]


class TestBruteForce:
    def test_3_2_is_path(self):
        res = brute_force_max_happy(3, 2)
        assert res.maximum == 2
        assert _is_path(res.witness)

    def test_5_3(self):
        assert brute_force_max_happy(5, 3).maximum == 6

    def test_4_2_is_c4(self):
        res = brute_force_max_happy(4, 2)
        assert res.maximum == 4
        assert nx.is_isomorphic(nx.Graph(res.witness.edges), nx.cycle_graph(4))

    def test_witness_contract(self):
        for k, l in [(5, 2), (6, 3), (7, 4)]:
            res = brute_force_max_happy(k, l)
            assert res.witness.m == k
            assert res.witness.max_degree() <= l
            assert happy_triple_count(res.witness) == res.maximum
            assert res.n_cap == min(2 * k, 10)

    @pytest.mark.parametrize("k", range(1, 5))
    def test_symmetry_breaking_matches_full_enumeration(self, k):
        for l in range(1, k + 1):
            try:
                full = brute_force_max_happy(k, l, symmetry_break=False)
            except DomainError:
                continue
            pruned = brute_force_max_happy(k, l)
            assert pruned.maximum == full.maximum
            assert pruned.graphs_examined <= full.graphs_examined

    def test_shapes_cover_every_isomorphism_class(self):
        # 4-edge graphs with no isolated vertices on <= 8 vertices: 11 classes
        res = brute_force_max_happy(4, 4, n_cap=8)
        assert res.distinct_shapes == 11

    @pytest.mark.parametrize("k", range(1, 8))
    def test_dp_upper_bounds_oracle(self, k, table):
        for l in range(1, k + 1):
            try:
                res = brute_force_max_happy(k, l)
            except DomainError:
                continue
            assert res.maximum <= table[k, l]

    def test_refusals(self):
        with pytest.raises(DomainError):
            brute_force_max_happy(8, 4)
        with pytest.raises(DomainError):
            brute_force_max_happy(3, 0)
        with pytest.raises(DomainError):
            brute_force_max_happy(3, 2, n_cap=2)

    def test_shape_key_is_invariant(self):
        a = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        b = Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)])
        assert shape_key(a) == shape_key(b)


class TestExtremal:
    def test_5_3(self):
        g = extremal_construction(5, 3)
        assert sorted(g.degrees(), reverse=True)[:2] == [3, 3]
        assert happy_triple_count(g) == 6 == f_bound(5, 3)

    def test_10_5_is_k25(self):
        g = extremal_construction(10, 5)
        assert nx.is_isomorphic(nx.Graph(g.edges), nx.complete_bipartite_graph(2, 5))
        assert happy_triple_count(g) == 25

    def test_4_3(self):
        g = extremal_construction(4, 3)
        assert happy_triple_count(g) == f_bound(4, 3) == 4

    @pytest.mark.parametrize("k", range(1, 40))
    def test_attains_bound(self, k):
        for l in range(ceil(k / 2), k + 1):
            if (k, l) == (2, 1):
                continue
            g = extremal_construction(k, l)
            assert g.m == k
            assert g.max_degree() == l
            assert happy_triple_count(g) == f_bound(k, l)

    def test_bound_not_attained_at_2_1(self):
        assert brute_force_max_happy(2, 1).maximum == 0 < f_bound(2, 1)
        with pytest.raises(DomainError):
            extremal_construction(2, 1)

    @pytest.mark.parametrize("k,l", [(5, 2), (5, 6), (0, 0)])
    def test_domain(self, k, l):
        with pytest.raises(DomainError):
            extremal_construction(k, l)
