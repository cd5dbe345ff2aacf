import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from unionpower import (
    Coalition,
    characteristic,
    coalition_potential,
    errors,
    harsanyi_dividends,
    one_step_worth,
    power_index,
    shapley_bruteforce,
    shapley_via_dividends,
    shapley_via_potential,
    subadditivity_witness,
    total_power,
    two_step_worth,
    validate,
    verify_potential_identity,
)
from unionpower.linform import LinearForm

from conftest import graph_1based, random_union_graph
from test_graph import union_graphs
from test_index import MARKET_FORMS

LF = LinearForm.of


def C(*one_based):
    return Coalition.from_nodes([v - 1 for v in one_based])


# The nonzero dividends of the ten-firm market game, keyed by 1-based members.
MARKET_DIVIDENDS = {
    (1,): LF(4, 9),
    (2,): LF(1, 2),
    (3,): LF(2, 3),
    (4,): LF(4, 5),
    (5,): LF(2, 2),
    (6,): LF(3, 3),
    (7,): LF(2, 8),
    (8,): LF(1, 3),
    (9,): LF(1, 2),
    (10,): LF(2, 3),
    (1, 2): LF(0, -2),
    (1, 3): LF(0, -2),
    (2, 3): LF(0, -2),
    (4, 5): LF(0, -2),
    (4, 6): LF(0, -2),
    (5, 6): LF(0, -2),
    (9, 10): LF(0, -2),
    (1, 2, 3): LF(0, 2),
    (4, 5, 6): LF(0, 2),
}


class TestCoalition:
    def test_members_roundtrip(self):
        c = C(1, 4, 7)
        assert c.members() == (0, 3, 6)
        assert len(c) == 3
        assert 0 in c and 1 not in c
        assert c.render() == "{1,4,7}"

    def test_set_algebra(self):
        assert (C(1, 2) | C(2, 3)).members() == (0, 1, 2)
        assert (C(1, 2) & C(2, 3)).members() == (1,)
        assert (C(1, 2) - C(2, 3)).members() == (0,)
        assert C(1).isdisjoint(C(2))
        assert Coalition.full(3).members() == (0, 1, 2)


class TestWorths:
    def test_one_step_singleton(self, example1):
        assert one_step_worth(example1, C(1)) == LF(4, 0)

    def test_one_step_empty(self, example1):
        assert one_step_worth(example1, Coalition()) == LinearForm.zero()

    def test_one_step_block(self, example1):
        assert one_step_worth(example1, C(1, 2, 3)) == LF(7, 0)

    def test_two_step_singleton(self, example1):
        assert two_step_worth(example1, C(1)) == LF(0, 9)

    def test_two_step_empty(self, example1):
        assert two_step_worth(example1, Coalition()) == LinearForm.zero()

    def test_two_step_block_deduplicates_neighbors(self, example1):
        # independent oracle: summing the frozen dividends over all nonempty
        # subsets of {1,2,3} gives the worth of the block
        expected = LinearForm.zero()
        for size in (1, 2, 3):
            for sub in itertools.combinations((1, 2, 3), size):
                expected = expected + MARKET_DIVIDENDS.get(sub, LinearForm.zero())
        assert expected == LF(7, 10)
        assert two_step_worth(example1, C(1, 2, 3)) == LF(0, 10)

    def test_spanning_coalition_rejected(self, example1):
        with pytest.raises(errors.CoalitionSpansUnions):
            one_step_worth(example1, C(1, 4))
        with pytest.raises(errors.CoalitionSpansUnions):
            two_step_worth(example1, C(1, 4))


class TestCharacteristic:
    def test_grand_coalition(self, example1):
        table = characteristic(example1)
        assert table.grand_value() == LF(22, 30)
        assert table.grand_value() == total_power(example1)

    def test_singleton_matches_dividend(self, example1):
        table = characteristic(example1)
        assert table.value(C(7)) == LF(2, 8)

    def test_empty(self, example1):
        assert characteristic(example1).value(Coalition()) == LinearForm.zero()

    def test_cross_union_additive(self, example1):
        table = characteristic(example1)
        t = C(1, 2)
        s = C(7, 9)
        assert table.value(t | s) == table.value(t) + table.value(s)

    @given(union_graphs())
    @settings(max_examples=40, deadline=None)
    def test_unionwise_additivity(self, g):
        table = characteristic(g)
        rng = random.Random(g.n * 1000 + len(g.edges))
        full = Coalition.full(g.n)
        for _ in range(10):
            t = Coalition(rng.randrange(1 << g.n))
            pieces = [
                t & Coalition.from_nodes(block) for block in g.partition
            ]
            total = LinearForm.zero()
            for piece in pieces:
                total = total + table.value(piece)
            assert table.value(t) == total
            assert t.mask <= full.mask


class TestSubadditivity:
    def test_market_witness(self, example1):
        w = subadditivity_witness(example1)
        assert w == (C(1), C(2))
        table = characteristic(example1)
        t, s = w
        assert table.value(t | s).b < (table.value(t) + table.value(s)).b

    def test_singleton_unions_additive(self):
        g = validate(4, [[0], [1], [2], [3]], [(0, 1), (1, 2), (2, 3)])
        assert subadditivity_witness(g) is None

    def test_spillover_graph_has_none(self, figure3):
        assert subadditivity_witness(figure3) is None

    def test_componentwise_inequality_exhaustive(self):
        rng = random.Random(77)
        for _ in range(6):
            g = random_union_graph(rng, n_lo=4, n_hi=8)
            table = characteristic(g)
            n = g.n
            for t_mask in range(1 << n):
                rest = ((1 << n) - 1) & ~t_mask
                s_mask = rest
                # iterate submasks of the complement
                while True:
                    va = table.value_pair(t_mask)
                    vb = table.value_pair(s_mask)
                    vu = table.value_pair(t_mask | s_mask)
                    assert vu[0] == va[0] + vb[0]  # alpha part additive
                    assert vu[1] <= va[1] + vb[1]  # beta part subadditive
                    if s_mask == 0:
                        break
                    s_mask = (s_mask - 1) & rest

    def test_beta_zero_additive(self, example1):
        table = characteristic(example1)
        rng = random.Random(3)
        for _ in range(50):
            t = Coalition(rng.randrange(1 << 10))
            s = Coalition(rng.randrange(1 << 10)) - t
            joint = table.value(t | s)
            split = table.value(t) + table.value(s)
            assert joint.evaluate(1, 0) == split.evaluate(1, 0)


class TestDividends:
    def test_market_table_exact(self, example1):
        table = harsanyi_dividends(example1)
        assert len(table) == 19
        got = {
            tuple(v + 1 for v in coal.members()): form
            for coal, form in table.sorted_items()
        }
        assert got == MARKET_DIVIDENDS

    def test_sorted_order(self, example1):
        keys = [
            tuple(v + 1 for v in coal.members())
            for coal, _ in harsanyi_dividends(example1).sorted_items()
        ]
        assert keys == [
            (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3),
            (4,), (5,), (6,), (4, 5), (4, 6), (5, 6), (4, 5, 6),
            (7,), (8,), (9,), (10,), (9, 10),
        ]

    def test_union_size_bound(self):
        g = validate(25, [[0], list(range(1, 25))], [(0, 1)])
        with pytest.raises(errors.UnionTooLarge):
            harsanyi_dividends(g, max_union_size=20)

    def test_alpha_part_lives_on_singletons(self, example1):
        for coal, form in harsanyi_dividends(example1).sorted_items():
            if len(coal) == 1:
                (i,) = coal.members()
                assert form.a == example1.external_degree(i)
            else:
                assert form.a == 0

    def test_cross_union_dividends_vanish(self, example1):
        # direct inclusion-exclusion, independent of the transform code
        table = characteristic(example1)
        rng = random.Random(9)
        for _ in range(12):
            members = rng.sample(range(10), rng.randint(2, 5))
            if len({example1.union_of(v) for v in members}) < 2:
                continue
            total = LinearForm.zero()
            for size in range(1, len(members) + 1):
                for sub in itertools.combinations(members, size):
                    sign = (-1) ** (len(members) - size)
                    total = total + table.value(
                        Coalition.from_nodes(sub)
                    ).scaled(sign)
            assert total.is_zero()

    @given(union_graphs(max_n=7))
    @settings(max_examples=30, deadline=None)
    def test_moebius_inversion(self, g):
        table = characteristic(g)
        dividends = harsanyi_dividends(g)
        rng = random.Random(g.n)
        masks = [rng.randrange(1 << g.n) for _ in range(8)] + [(1 << g.n) - 1]
        for t_mask in masks:
            total = LinearForm.zero()
            for mask, form in dividends.entries.items():
                if mask & t_mask == mask:
                    total = total + form
            assert total == table.value(Coalition(t_mask))


class TestShapleyRoutes:
    def test_dividend_route_market(self, example1):
        assert shapley_via_dividends(example1) == MARKET_FORMS

    def test_potential_route_market(self, example1):
        assert shapley_via_potential(example1) == MARKET_FORMS

    def test_bruteforce_market(self, example1):
        assert shapley_bruteforce(example1) == MARKET_FORMS

    def test_single_link_path(self):
        g = graph_1based(6, [[1, 2, 3], [4, 5, 6]], [(1, 4)])
        sh = shapley_bruteforce(g)
        assert sh[0] == LF(1, 0)
        assert sh[3] == LF(1, 0)

    def test_edge_free_zeros(self):
        g = validate(5, [[0, 1], [2, 3, 4]], [])
        assert all(f.is_zero() for f in shapley_bruteforce(g))
        assert all(f.is_zero() for f in shapley_via_dividends(g))

    def test_size_cap(self):
        g = validate(17, [[v] for v in range(17)], [])
        with pytest.raises(errors.GraphTooLarge):
            shapley_bruteforce(g, max_n=16)

    @given(union_graphs())
    @settings(max_examples=40, deadline=None)
    def test_four_routes_agree(self, g):
        closed = power_index(g)
        assert shapley_via_potential(g) == closed
        assert shapley_via_dividends(g) == closed
        assert shapley_bruteforce(g) == closed


class TestPotential:
    def test_empty(self, example1):
        assert coalition_potential(example1, Coalition()) == LinearForm.zero()

    def test_two_sector_singleton(self, figure2a):
        assert coalition_potential(figure2a, C(1)) == LF(1, 1)

    def test_marginal_is_index_entry(self, example1):
        full = Coalition.full(10)
        marginal = coalition_potential(example1, full) - coalition_potential(
            example1, full.remove(0)
        )
        assert marginal == LF(4, Fraction(23, 3))

    def test_identity_trivial(self, example1):
        assert verify_potential_identity(example1, Coalition())

    def test_identity_grand(self, example1):
        assert verify_potential_identity(example1, Coalition.full(10))

    def test_identity_exhaustive_small(self):
        rng = random.Random(41)
        g = random_union_graph(rng, n_lo=6, n_hi=8)
        for mask in range(1 << g.n):
            assert verify_potential_identity(g, Coalition(mask))
