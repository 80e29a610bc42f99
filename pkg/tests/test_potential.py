from fractions import Fraction

import pytest

from ramsey_arena.core import (BLUE, RED, BlueClass, GameKind, GameState,
                               RedClass, VertexType)
from ramsey_arena.potential import (PotentialTable, UnknownClassError,
                                    builtin_table, extract_bound, potential,
                                    theorem2_bound, vertex_value)
from ramsey_arena.rational import INF, ExtendedRational


def vt(red, blue=BlueClass.B0):
    return VertexType(red, blue)


class TestBuiltinTables:
    def test_p9_cells(self):
        t = builtin_table(GameKind.P9)
        assert vertex_value(t, vt(RedClass.L0, BlueClass.B1)) == 14
        assert vertex_value(t, vt(RedClass.L1, BlueClass.B1)) == 14
        assert vertex_value(t, vt(RedClass.O)) == 0
        assert vertex_value(t, vt(RedClass.F4P)) == INF
        assert t.jump == 12

    def test_p8_cells(self):
        t = builtin_table(GameKind.P8)
        assert vertex_value(t, vt(RedClass.N0, BlueClass.B2P)) == 76
        assert vertex_value(t, vt(RedClass.N1, BlueClass.B1)) == 53
        assert vertex_value(t, vt(RedClass.F3, BlueClass.B0)) == 72
        assert t.jump == 44

    def test_p7_cells(self):
        t = builtin_table(GameKind.P7)
        assert vertex_value(t, vt(RedClass.F1, BlueClass.B1)) == 24
        assert vertex_value(t, vt(RedClass.F2, BlueClass.B0)) == 32
        assert vertex_value(t, vt(RedClass.F3, BlueClass.B0)) == INF
        assert t.jump == 20

    def test_exercise_tables(self):
        p3 = builtin_table(GameKind.P3)
        assert vertex_value(p3, vt(RedClass.I, BlueClass.B1)) == 7
        assert p3.jump == 8
        p5 = builtin_table(GameKind.P5)
        assert vertex_value(p5, vt(RedClass.F0, BlueClass.B0)) == 2
        assert vertex_value(p5, vt(RedClass.F1, BlueClass.B2P)) == 6
        assert p5.jump == 4

    def test_unknown_class_raises(self):
        with pytest.raises(UnknownClassError):
            vertex_value(builtin_table(GameKind.P3), vt(RedClass.L0))

    def test_round_trip(self):
        for game in GameKind:
            t = builtin_table(game)
            assert PotentialTable.loads(t.dumps()) == t
            assert PotentialTable.loads(t.dumps()).dumps() == t.dumps()


class TestPotential:
    def test_empty_state_is_zero(self):
        assert potential(GameState.empty(GameKind.P9), builtin_table(GameKind.P9)) == 0

    def test_single_red_edge_p9(self):
        s = GameState(GameKind.P9, red_edges=[(0, 1)])
        assert potential(s, builtin_table(GameKind.P9)) == 12

    def test_red_triangle_is_infinite(self):
        s = GameState(GameKind.P9, red_edges=[(0, 1), (1, 2), (0, 2)])
        assert potential(s, builtin_table(GameKind.P9)) == INF

    def test_forbidden_path_is_infinite(self):
        s = GameState(GameKind.P3, red_edges=[(0, 1), (1, 2)])
        assert potential(s, builtin_table(GameKind.P3)) == INF

    def test_beyond_table_range_is_infinite(self):
        # a P4 with the capital on an end edge puts a vertex at distance 2,
        # off the P5 table's finite range
        s = GameState(GameKind.P5, red_edges=[(0, 1), (1, 2), (2, 3)], capitals=[(0, 1)])
        assert potential(s, builtin_table(GameKind.P5)) == INF

    def test_fresh_vertices_do_not_change_potential(self):
        s = GameState(GameKind.P9, red_edges=[(0, 1)])
        assert potential(s.with_vertices([7, 8]), builtin_table(GameKind.P9)) == 12

    def test_finite_iff_within_range(self):
        t = builtin_table(GameKind.P9)
        deep = GameState(GameKind.P9,
                         red_edges=[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
                         capitals=[(0, 1)])
        assert potential(deep, t) == INF  # vertex 5 at distance 4
        ok = GameState(GameKind.P9,
                       red_edges=[(0, 1), (1, 2), (2, 3), (3, 4)],
                       capitals=[(0, 1)])
        assert potential(ok, t) == 8 + 8 + 10 + 12 + 20


class TestBoundExtraction:
    @pytest.mark.parametrize("game,alpha,beta", [
        (GameKind.P7, Fraction(8, 5), Fraction(-1)),
        (GameKind.P8, Fraction(18, 11), Fraction(-1)),
        (GameKind.P9, Fraction(5, 3), Fraction(-1)),
        (GameKind.P3, Fraction(5, 4), Fraction(-5, 8)),
        (GameKind.P5, Fraction(3, 2), Fraction(-3, 4)),
    ])
    def test_coefficients_exact(self, game, alpha, beta):
        assert extract_bound(builtin_table(game)) == (alpha, beta)

    def test_theorem_bound_for_paths(self):
        # blue path targets have v1 = 2
        assert theorem2_bound(GameKind.P9, 12, 2) == Fraction(5, 3) * 12 - 2
        assert theorem2_bound(GameKind.P7, 10, 2) == Fraction(8, 5) * 10 - 2

    def test_theorem_bound_for_cycles(self):
        assert theorem2_bound(GameKind.P8, 11, 0) == Fraction(18, 11) * 11
