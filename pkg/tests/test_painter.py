import pytest

from ramsey_arena.core import (BLUE, RED, BlueClass, GameKind, GameState,
                               RedClass, VertexType)
from ramsey_arena.painter import (DirectiveKind, StrategyTable,
                                  apply_move, builtin_strategy, decide,
                                  totality_gaps, type_universe)


def vt(red, blue=BlueClass.B0):
    return VertexType(red, blue)


class TestBuiltinStrategyRouting:
    def test_p9_case_l(self):
        s = builtin_strategy(GameKind.P9)
        rule, _ = s.first_match(vt(RedClass.I), vt(RedClass.F0))
        assert rule.case_id == "L" and rule.color == RED

    def test_p9_case_d_vs_i_split_on_blue_degree(self):
        s = builtin_strategy(GameKind.P9)
        rule, _ = s.first_match(vt(RedClass.O, BlueClass.B0), vt(RedClass.F2))
        assert rule.case_id == "D" and rule.color == BLUE
        rule, _ = s.first_match(vt(RedClass.O, BlueClass.B1), vt(RedClass.F2))
        assert rule.case_id == "I" and rule.color == RED

    def test_p8_case_i(self):
        s = builtin_strategy(GameKind.P8)
        rule, _ = s.first_match(vt(RedClass.O), vt(RedClass.N0))
        assert rule.case_id == "I" and rule.color == RED
        assert rule.directive is DirectiveKind.VERTEX_V

    def test_blue_beats_red_on_overlap(self):
        # two isolated vertices with blue degree 2+ meet both (A) and (E)
        s = builtin_strategy(GameKind.P9)
        rule, _ = s.first_match(vt(RedClass.O, BlueClass.B2P), vt(RedClass.O, BlueClass.B2P))
        assert rule.color == BLUE and rule.case_id == "A"

    def test_p7_case_c_covers_l1(self):
        s = builtin_strategy(GameKind.P7)
        rule, _ = s.first_match(vt(RedClass.I), vt(RedClass.L1))
        assert rule.case_id == "C" and rule.color == BLUE

    @pytest.mark.parametrize("game", list(GameKind))
    def test_totality(self, game):
        assert totality_gaps(builtin_strategy(game)) == []

    @pytest.mark.parametrize("game", list(GameKind))
    def test_round_trip(self, game):
        s = builtin_strategy(game)
        loaded = StrategyTable.loads(s.dumps())
        for ta in type_universe(game):
            for tb in type_universe(game):
                r1, o1 = s.first_match(ta, tb)
                r2, o2 = loaded.first_match(ta, tb)
                assert (r1.color, r1.directive, o1) == (r2.color, r2.directive, o2)


class TestDecide:
    def test_two_isolated_vertices_red(self):
        s = GameState(GameKind.P9, vertices=[0, 1])
        d = decide(s, builtin_strategy(GameKind.P9), 0, 1)
        assert d.color == RED and d.case_id == "E"
        assert d.directive.kind is DirectiveKind.NONE

    def test_i_i_join_adds_capital_edge(self):
        s = GameState(GameKind.P9, red_edges=[(0, 1), (2, 3)])
        d = decide(s, builtin_strategy(GameKind.P9), 1, 2)
        assert d.color == RED
        assert d.directive.kind is DirectiveKind.EDGE_UV
        assert d.directive.capital == (1, 2)

    def test_i_l1_join_blue_in_p7(self):
        s = GameState(GameKind.P7, red_edges=[(0, 1), (2, 3), (3, 4)])
        d = decide(s, builtin_strategy(GameKind.P7), 1, 2)
        assert d.color == BLUE

    def test_o_l_join_capital_avoids_u(self):
        # case (G): capital edge vw with w != u and vw red
        s = GameState(GameKind.P9, red_edges=[(1, 2), (2, 3)], vertices=[0])
        d = decide(s, builtin_strategy(GameKind.P9), 0, 1)
        assert d.color == RED
        assert d.directive.capital == (1, 2)

    def test_center_attachment_picks_smallest_neighbor(self):
        s = GameState(GameKind.P9, red_edges=[(1, 2), (2, 3)], vertices=[0])
        d = decide(s, builtin_strategy(GameKind.P9), 0, 2)
        assert d.directive.capital == (1, 2)

    def test_p8_o_n1_capital_is_inner_neighbor(self):
        # case (J): add w to T where w != u and vw is red
        s = GameState(GameKind.P8, red_edges=[(1, 2), (2, 3), (3, 4)], vertices=[0])
        d = decide(s, builtin_strategy(GameKind.P8), 0, 1)
        assert d.color == RED
        assert d.directive.kind is DirectiveKind.VERTEX_V_NEIGHBOR
        assert d.directive.capital == 2

    def test_decide_depends_only_on_types(self):
        # relabeled isomorphic states get the same decision
        s1 = GameState(GameKind.P9, red_edges=[(0, 1)], blue_edges=[(2, 3)])
        s2 = GameState(GameKind.P9, red_edges=[(10, 11)], blue_edges=[(12, 13)])
        d1 = decide(s1, builtin_strategy(GameKind.P9), 1, 2)
        d2 = decide(s2, builtin_strategy(GameKind.P9), 11, 12)
        assert (d1.color, d1.case_id) == (d2.color, d2.case_id)


class TestApplyMove:
    def test_capitals_only_grow(self):
        s = GameState(GameKind.P9, red_edges=[(0, 1), (2, 3)])
        after = apply_move(s, builtin_strategy(GameKind.P9), 1, 2)
        assert after.capitals == frozenset({(1, 2)})
        assert after.classify()[0].red is RedClass.F1

    def test_blue_move_keeps_capitals(self):
        s = GameState(GameKind.P9, red_edges=[(0, 1), (1, 2), (2, 3)], capitals=[(1, 2)])
        after = apply_move(s, builtin_strategy(GameKind.P9), 0, 3)
        assert after.capitals == s.capitals

    def test_p8_o_n1_join(self):
        s = GameState(GameKind.P8, red_edges=[(1, 2), (2, 3), (3, 4)], vertices=[0])
        after = apply_move(s, builtin_strategy(GameKind.P8), 0, 1)
        assert after.capitals == frozenset({2})
        types = after.classify()
        assert types[2].red is RedClass.F0
        assert types[0].red is RedClass.F2 and types[4].red is RedClass.F2

    def test_every_reached_state_classifies(self):
        # exhaustively apply the painter to all unordered pairs of a seed state
        s = GameState(GameKind.P9, red_edges=[(0, 1), (2, 3), (4, 5), (5, 6)])
        strat = builtin_strategy(GameKind.P9)
        for u in range(8):
            for v in range(u + 1, 8):
                if s.has_edge(u, v):
                    continue
                after = apply_move(s, strat, u, v)
                after.classify()
