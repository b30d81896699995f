from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_is_balanced
from signedspec.sgcore import (
    DuplicateEdgeError,
    GraphError,
    MissingEdgeError,
    SelfLoopError,
    SgrParseError,
    SignedGraph,
    SwitchingFunction,
    VertexRangeError,
    apply_switching,
    canonical_form,
    degree_sequence,
    delete_edges,
    delete_vertices,
    dumps,
    from_edge_list,
    induced,
    insert_edge,
    is_balanced,
    load,
    dump,
    loads,
    neighborhood,
    relabel,
    spanning_forest,
    switch,
    switching_equivalent,
)
from strategies import signed_graphs


def k4_one_negative():
    return from_edge_list(4, [(u, v, -1 if (u, v) == (0, 1) else 1) for u, v in combinations(range(4), 2)])


def cycle(n, negative=()):
    return from_edge_list(n, [(i, (i + 1) % n, -1 if i in negative else 1) for i in range(n)])


C3_ONE_NEG = from_edge_list(3, [(0, 1, -1), (0, 2, 1), (1, 2, 1)])


class TestConstruction:
    def test_k2(self):
        g = from_edge_list(2, [(0, 1, 1)])
        assert g.m == 1 and g.edges == ((0, 1, 1),)

    def test_edges_are_normalised_and_sorted(self):
        g = from_edge_list(3, [(2, 1, -1), (1, 0, 1)])
        assert g.edges == ((0, 1, 1), (1, 2, -1))
        assert g.sign(2, 1) == -1 and g.sign(0, 2) == 0

    def test_k4_fixture(self):
        g = k4_one_negative()
        assert g.m == 6
        assert g.negative_edges == ((0, 1),)

    @pytest.mark.parametrize(
        "n, edges, exc",
        [
            (3, [(0, 1, 1), (0, 1, -1)], DuplicateEdgeError),
            (3, [(0, 1, 1), (1, 0, 1)], DuplicateEdgeError),
            (3, [(0, 3, 1)], VertexRangeError),
            (3, [(-1, 0, 1)], VertexRangeError),
            (3, [(1, 1, 1)], SelfLoopError),
            (3, [(0, 1, 0)], GraphError),
            (-1, [], GraphError),
        ],
    )
    def test_rejects_bad_input(self, n, edges, exc):
        with pytest.raises(exc):
            from_edge_list(n, edges)

    def test_degree_sequence(self):
        assert degree_sequence(cycle(5)) == (2, 2, 2, 2, 2)
        assert degree_sequence(k4_one_negative()) == (3, 3, 3, 3)
        star = from_edge_list(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
        assert degree_sequence(star) == (3, 1, 1, 1)

    def test_neighborhood(self):
        g = k4_one_negative()
        assert neighborhood(g, 0) == (frozenset({1, 2, 3}), 3)
        assert neighborhood(g, 0, {1, 2}) == (frozenset({1, 2}), 2)
        with pytest.raises(VertexRangeError):
            neighborhood(g, 7)


class TestSwitching:
    def test_empty_and_full_switch_are_identity(self):
        g = k4_one_negative()
        assert switch(g, ()) == g
        assert switch(g, range(4)) == g

    def test_c3_example(self):
        assert switch(C3_ONE_NEG, {0}).edges == ((0, 1, 1), (0, 2, -1), (1, 2, 1))

    def test_out_of_range(self):
        with pytest.raises(VertexRangeError):
            switch(C3_ONE_NEG, {5})

    def test_switching_function_from_set(self):
        th = SwitchingFunction.from_set(4, {1, 3})
        assert th.theta == (1, -1, 1, -1)
        assert th.negative_set == frozenset({1, 3})
        assert apply_switching(C3_ONE_NEG, SwitchingFunction.identity(3)) == C3_ONE_NEG
        with pytest.raises(GraphError):
            apply_switching(C3_ONE_NEG, th)

    @given(signed_graphs(max_n=8), st.data())
    def test_involution_and_composition(self, g, data):
        S = data.draw(st.sets(st.integers(0, g.n - 1)))
        T = data.draw(st.sets(st.integers(0, g.n - 1)))
        assert switch(switch(g, S), S) == g
        assert switch(switch(g, S), T) == switch(g, S ^ T)
        assert switch(g, S).underlying == g.underlying


class TestBalance:
    def test_c5_positive(self):
        r = is_balanced(cycle(5))
        assert r.balanced and r.witness.theta == (1,) * 5

    def test_c3_one_negative(self):
        r = is_balanced(C3_ONE_NEG)
        assert not r.balanced and sorted(r.negative_cycle) == [0, 1, 2]

    def test_k4_one_negative(self):
        assert not is_balanced(k4_one_negative()).balanced

    @given(signed_graphs(max_n=7))
    def test_matches_brute_force(self, g):
        r = is_balanced(g)
        assert r.balanced == brute_is_balanced(g)
        if r.balanced:
            assert apply_switching(g, r.witness).negative_edges == ()
        else:
            cyc = r.negative_cycle
            k = len(cyc)
            assert k >= 3 and len(set(cyc)) == k
            prod = 1
            for i in range(k):
                s = g.sign(cyc[i], cyc[(i + 1) % k])
                assert s != 0
                prod *= s
            assert prod == -1


class TestCanonicalForm:
    def test_positive_triangle(self):
        h, th = canonical_form(from_edge_list(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)]))
        assert h.negative_edges == () and th.theta == (1, 1, 1)

    def test_c3_signings(self):
        # two negative edges: balanced, so the canonical form is all-positive
        two_neg = from_edge_list(3, [(0, 1, -1), (0, 2, -1), (1, 2, 1)])
        assert canonical_form(two_neg)[0].negative_edges == ()
        # odd signings share one canonical form with a single negative co-tree edge
        one_neg = from_edge_list(3, [(0, 1, 1), (0, 2, 1), (1, 2, -1)])
        three_neg = from_edge_list(3, [(0, 1, -1), (0, 2, -1), (1, 2, -1)])
        c1, c3 = canonical_form(one_neg)[0], canonical_form(three_neg)[0]
        assert c1 == c3 == canonical_form(C3_ONE_NEG)[0]
        assert len(c1.negative_edges) == 1

    def test_path_becomes_positive(self):
        for signs in [(1, 1), (1, -1), (-1, 1), (-1, -1)]:
            p = from_edge_list(3, [(0, 1, signs[0]), (1, 2, signs[1])])
            assert canonical_form(p)[0].negative_edges == ()

    @given(signed_graphs(max_n=8), st.data())
    def test_is_switching_invariant(self, g, data):
        S = data.draw(st.sets(st.integers(0, g.n - 1)))
        h, th = canonical_form(g)
        assert apply_switching(g, th) == h
        assert canonical_form(switch(g, S))[0] == h
        assert all(h.sign(u, v) == 1 for u, v in spanning_forest(g))


class TestEquivalence:
    def test_c5_examples(self):
        assert switching_equivalent(cycle(5), cycle(5, negative={0, 2}))
        assert not switching_equivalent(cycle(5), cycle(5, negative={3}))

    def test_different_underlying(self):
        assert not switching_equivalent(cycle(4), from_edge_list(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]))
        assert not switching_equivalent(cycle(4), cycle(5))

    @given(signed_graphs(max_n=8), st.data())
    def test_switch_is_equivalent(self, g, data):
        S = data.draw(st.sets(st.integers(0, g.n - 1)))
        assert switching_equivalent(g, switch(g, S))


class TestSubgraphs:
    def test_induced_avoiding_negative_edge(self):
        k3 = induced(k4_one_negative(), [1, 2, 3])
        assert k3 == from_edge_list(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)])

    def test_delete_edges(self):
        g = k4_one_negative()
        assert delete_edges(g, []) == g
        assert delete_edges(g, [(1, 0)]).negative_edges == ()
        with pytest.raises(MissingEdgeError):
            delete_edges(cycle(4), [(0, 2)])

    def test_delete_vertices(self):
        assert delete_vertices(k4_one_negative(), {0}) == induced(k4_one_negative(), [1, 2, 3])

    def test_insert_edge(self):
        k2 = from_edge_list(2, [(0, 1, 1)])
        with pytest.raises(DuplicateEdgeError):
            insert_edge(k2, 0, 1, -1)
        assert insert_edge(SignedGraph(2), 1, 0, -1).edges == ((0, 1, -1),)

    def test_relabel(self):
        g = relabel(C3_ONE_NEG, [2, 0, 1])
        assert g.sign(2, 0) == -1 and g.m == 3


class TestSgrFormat:
    def test_roundtrip_text(self):
        g = k4_one_negative()
        text = dumps(g)
        assert text.splitlines()[0] == "n 4"
        assert "e 0 1 -" in text.splitlines()
        assert loads(text) == g

    def test_comments_and_blank_lines(self):
        g = loads("# a triangle\n\nn 3  # three vertices\ne 0 1 -\ne 1 2 +\n\ne 0 2 +\n")
        assert g == C3_ONE_NEG

    def test_file_roundtrip(self, tmp_path):
        path = tmp_path / "g.sgr"
        dump(C3_ONE_NEG, path)
        assert load(path) == C3_ONE_NEG

    @pytest.mark.parametrize(
        "text, line, col",
        [
            ("e 0 1 +\n", 1, 1),
            ("", 1, 1),
            ("n 3\nn 3\n", 2, 1),
            ("n x\n", 1, 3),
            ("n 3\ne 0 1 *\n", 2, 7),
            ("n 3\ne 0 5 +\n", 2, 5),
            ("n 3\n  e 1 1 +\n", 2, 5),
            ("n 3\ne 0 1 +\ne 1 0 -\n", 3, 3),
            ("n 3\nv 0\n", 2, 1),
            ("n 3\ne 0 1\n", 2, 1),
        ],
    )
    def test_parse_errors_carry_position(self, text, line, col):
        with pytest.raises(SgrParseError) as info:
            loads(text)
        assert (info.value.line, info.value.col) == (line, col)
        assert str(info.value).startswith(f"{line}:{col}: ")

    @given(signed_graphs(min_n=0, max_n=9))
    def test_roundtrip_property(self, g):
        assert loads(dumps(g)) == g
