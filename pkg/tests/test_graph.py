import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unionpower import errors, from_file_dict, to_file_dict, validate
from unionpower.graph import permuted_cache_key

from conftest import graph_1based


# Figure-1 style market graph, written out longhand as the edge-list oracle.
EX1_EDGES = [
    (1, 2), (1, 4), (1, 5), (1, 6), (1, 7),
    (2, 4), (3, 4), (3, 10), (4, 7), (5, 8),
    (6, 9), (6, 10), (4, 5), (5, 6),
]
EX1_UNIONS = [[1, 2, 3], [4, 5, 6], [7, 8, 9, 10]]


def _ex1():
    return graph_1based(10, EX1_UNIONS, EX1_EDGES)


@st.composite
def union_graphs(draw, max_n=8):
    n = draw(st.integers(3, max_n))
    r = draw(st.integers(2, min(3, n)))
    assignment = list(range(r)) + [
        draw(st.integers(0, r - 1)) for _ in range(n - r)
    ]
    perm = draw(st.permutations(range(n)))
    blocks = [[] for _ in range(r)]
    for v, b in zip(perm, assignment):
        blocks[b].append(v)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return validate(n, blocks, edges)


class TestValidate:
    def test_example_market(self):
        g = _ex1()
        assert g.n == 10
        assert g.r == 3
        assert len(g.edges) == 14

    def test_overlapping_unions(self):
        with pytest.raises(errors.OverlappingUnions):
            validate(3, [[0, 1], [1, 2]], [])

    def test_self_loop(self):
        with pytest.raises(errors.SelfLoop):
            validate(3, [[0], [1, 2]], [(1, 1)])

    def test_empty_union(self):
        with pytest.raises(errors.EmptyUnion):
            validate(3, [[0, 1, 2], []], [])

    def test_uncovered_node(self):
        with pytest.raises(errors.UncoveredNode):
            validate(4, [[0, 1], [2]], [])

    def test_node_out_of_range(self):
        with pytest.raises(errors.NodeOutOfRange):
            validate(3, [[0, 1], [2, 5]], [])
        with pytest.raises(errors.NodeOutOfRange):
            validate(3, [[0, 1], [2]], [(0, 7)])

    def test_too_few_unions(self):
        with pytest.raises(errors.TooFewUnions):
            validate(3, [[0, 1, 2]], [])

    def test_too_few_nodes(self):
        with pytest.raises(errors.TooFewNodes):
            validate(2, [[0], [1]], [])

    def test_duplicate_edges_deduplicated(self):
        g = validate(3, [[0], [1, 2]], [(0, 1), (1, 0), (0, 1)])
        assert g.edges == ((0, 1),)

    def test_message_names_offender(self):
        with pytest.raises(errors.SelfLoop, match=r"\(1, 1\)"):
            validate(3, [[0], [1, 2]], [(1, 1)])


class TestNeighbors:
    def test_restricted_to_outside(self):
        g = _ex1()
        assert g.neighbors(0, g.outside_union(0)) == {3, 4, 5, 6}

    def test_isolated(self):
        g = validate(3, [[0], [1, 2]], [])
        assert g.neighbors(0) == frozenset()

    def test_unrestricted(self):
        g = _ex1()
        assert g.neighbors(6) == {0, 3}


class TestDegrees:
    def test_hub_profile(self):
        prof = _ex1().degree_profile(0)
        assert (prof.d_ext, prof.d_int, prof.d_total) == (4, 1, 5)
        assert prof.per_union == (1, 3, 1)

    def test_leaf_profile(self):
        prof = _ex1().degree_profile(8)
        assert (prof.d_ext, prof.d_int) == (1, 0)

    def test_isolated_profile(self):
        g = validate(4, [[0, 1], [2, 3]], [(0, 2)])
        prof = g.degree_profile(3)
        assert (prof.d_total, prof.d_int, prof.d_ext) == (0, 0, 0)

    @given(union_graphs())
    @settings(max_examples=60, deadline=None)
    def test_profile_consistency(self, g):
        for i in range(g.n):
            prof = g.degree_profile(i)
            assert prof.d_total == prof.d_int + prof.d_ext == sum(prof.per_union)

    @given(union_graphs())
    @settings(max_examples=60, deadline=None)
    def test_external_handshake(self, g):
        total = sum(g.external_degree(i) for i in range(g.n))
        assert total == 2 * g.external_edge_count()


class TestBridges:
    def test_all_nodes_bridge(self):
        g = _ex1()
        assert g.bridge_nodes() == frozenset(range(10))

    def test_internal_only(self):
        g = validate(4, [[0, 1], [2, 3]], [(0, 1), (2, 3)])
        assert g.bridge_nodes() == frozenset()

    def test_two_sector_bridge(self, figure2a):
        assert figure2a.bridge_nodes() == {0, 3}

    @given(union_graphs())
    @settings(max_examples=60, deadline=None)
    def test_bridge_iff_external_degree(self, g):
        for i in range(g.n):
            assert (i in g.bridge_nodes()) == (g.external_degree(i) >= 1)


class TestExternalEdgeCount:
    def test_market(self):
        assert _ex1().external_edge_count() == 11

    def test_edge_free(self):
        assert validate(3, [[0], [1, 2]], []).external_edge_count() == 0

    def test_spillover_network(self, figure3):
        assert figure3.external_edge_count() == 7


class TestIncompleteBridge:
    def test_partial_contact(self, figure2a):
        assert figure2a.is_incomplete_bridge(0)

    def test_no_external(self, figure2a):
        assert not figure2a.is_incomplete_bridge(1)

    def test_market_hub(self):
        # node 1 saturates one foreign union but only grazes another
        assert _ex1().is_incomplete_bridge(0)

    def test_complete_bipartite(self):
        g = validate(4, [[0, 1], [2, 3]], [(0, 2), (0, 3), (1, 2), (1, 3)])
        assert not any(g.is_incomplete_bridge(i) for i in range(4))


class TestRestrictedSpillover:
    def test_present(self, figure3):
        psi = figure3.restricted_spillover_map()
        assert psi is not None
        assert psi[1] == 2  # node 2 points into the third union
        assert psi[5] == 4  # node 6 points into the fifth union
        assert len(psi) == 12

    def test_absent_multiunion_contact(self):
        assert _ex1().restricted_spillover_map() is None

    def test_single_edge(self):
        g = graph_1based(6, [[1, 2, 3], [4, 5, 6]], [(1, 4)])
        psi = g.restricted_spillover_map()
        assert psi == {0: 1, 3: 0}

    def test_internal_edge_breaks_it(self):
        g = graph_1based(6, [[1, 2, 3], [4, 5, 6]], [(1, 4), (2, 3)])
        assert g.restricted_spillover_map() is None

    @given(union_graphs())
    @settings(max_examples=60, deadline=None)
    def test_map_is_sound(self, g):
        psi = g.restricted_spillover_map()
        if psi is None:
            return
        for i, ell in psi.items():
            nbrs = g.neighbors(i)
            assert nbrs
            assert nbrs <= frozenset(g.union_members(ell))
            assert ell != g.union_of(i)


class TestPermutation:
    def test_identity(self):
        g = _ex1()
        assert g.apply_permutation(list(range(10))) == g

    def test_swap(self, figure2a):
        sigma = [0, 2, 1, 3, 4, 5]
        swapped = figure2a.apply_permutation(sigma)
        assert set(swapped.edges) == {(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)}
        assert swapped.partition == figure2a.partition

    def test_not_a_bijection(self):
        with pytest.raises(errors.NotABijection):
            _ex1().apply_permutation([0] * 10)

    @given(union_graphs(), st.randoms(use_true_random=False))
    @settings(max_examples=60, deadline=None)
    def test_permutation_preserves_counts(self, g, rnd):
        sigma = list(range(g.n))
        rnd.shuffle(sigma)
        h = g.apply_permutation(sigma)
        assert h.n == g.n and h.r == g.r
        assert h.external_edge_count() == g.external_edge_count()
        assert sorted(
            (p.d_total, p.d_int, p.d_ext)
            for p in (h.degree_profile(i) for i in range(h.n))
        ) == sorted(
            (p.d_total, p.d_int, p.d_ext)
            for p in (g.degree_profile(i) for i in range(g.n))
        )
        inverse = [0] * g.n
        for i, s in enumerate(sigma):
            inverse[s] = i
        assert h.apply_permutation(inverse) == g
        assert permuted_cache_key(g, sigma) == h.cache_key()


class TestMergeUnions:
    def test_merge_blocks(self):
        g = _ex1().merge_unions(1, 2)
        assert g.r == 2
        assert g.partition == ((0, 1, 2), (3, 4, 5, 6, 7, 8, 9))

    def test_would_leave_single(self, figure2a):
        with pytest.raises(errors.WouldLeaveSingleUnion):
            figure2a.merge_unions(0, 1)

    def test_same_union(self):
        with pytest.raises(errors.SameUnion):
            _ex1().merge_unions(1, 1)

    def test_degrees_recounted(self):
        merged = _ex1().merge_unions(0, 1)
        # node 7 keeps both contacts outside its own union
        assert merged.degree_profile(6).d_ext == 2


class TestInterUnionRestriction:
    def test_bridge(self, figure2a):
        assert figure2a.inter_union_restriction(0) == ((0, 3), (3, 4))

    def test_no_external(self, figure2a):
        assert figure2a.inter_union_restriction(1) == ()

    def test_market_leaf(self):
        g = _ex1()
        expected = {
            (0, 1), (0, 3), (0, 4), (0, 5), (0, 6),
            (1, 3), (2, 3), (3, 4), (3, 6),
        }
        assert set(g.inter_union_restriction(6)) == expected


class TestLinearityFamily:
    def test_two_contacts(self, figure2b):
        fam = figure2b.linearity_family(0)
        assert len(fam) == 2
        # first member keeps the contact with the smaller neighbor id
        assert set(figure2b.edges) - set(fam[0]) == {(0, 5)}
        assert set(figure2b.edges) - set(fam[1]) == {(0, 3)}

    def test_single_contact(self, figure2a):
        assert figure2a.linearity_family(0) == (figure2a.edges,)

    def test_market_hub(self):
        assert len(_ex1().linearity_family(0)) == 4

    def test_no_external_edges(self, figure2a):
        with pytest.raises(errors.NoExternalEdges):
            figure2a.linearity_family(1)


class TestFileFormat:
    def test_roundtrip(self):
        doc = {
            "nodes": 6,
            "unions": [[1, 2, 3], [4, 5, 6]],
            "edges": [[1, 4], [4, 5]],
            "labels": {"1": "hub"},
        }
        g = from_file_dict(doc)
        assert to_file_dict(g) == doc
        assert g.labels == {0: "hub"}

    def test_missing_key(self):
        from unionpower.graph import GraphFormatError

        with pytest.raises(GraphFormatError):
            from_file_dict({"nodes": 3, "unions": [[1], [2, 3]]})

    def test_one_based_error_message(self):
        doc = {
            "nodes": 3,
            "unions": [[1], [2, 3]],
            "edges": [[2, 2]],
        }
        with pytest.raises(errors.SelfLoop, match=r"\(2, 2\)"):
            from_file_dict(doc)

    def test_json_serializable(self):
        doc = to_file_dict(_ex1())
        json.dumps(doc)
