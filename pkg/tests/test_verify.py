from fractions import Fraction

import pytest

from ramsey_arena.core import GameKind, GameState, RedClass
from ramsey_arena.painter import builtin_strategy
from ramsey_arena.potential import PotentialTable, builtin_table
from ramsey_arena.verify import (enumerate_case_delta, red_move_transitions,
                                 verify_jump_bound, verify_monotone_reduction)

# Per-case maxima of the published potential-change tables.
P9_DELTAS = {"A": 12, "B": 12, "C": 12, "D": 12,
             "E": 12, "F": 12, "G": 12, "H": 12, "I": 12, "J": 12, "K": 12, "L": 10}
P7_DELTAS = {"A": 20, "B": 20, "C": 20, "D": 20,
             "E": 20, "F": 20, "G": 20, "H": 16, "I": 20, "J": 20, "K": 16}
P8_DELTAS = {"A": 44, "B": 44, "C": 44, "D": 44,
             "E": 44, "F": 44, "G": 42, "H": 44, "I": 38, "J": 44, "K": 40,
             "L": 44, "M": 44, "N": 44, "O": 34, "P": 30}
P3_DELTAS = {"A": 8, "B": 8}
P5_DELTAS = {"A": 4, "B": 4, "C": 4, "D": 4}

EXPECTED = {
    GameKind.P9: (P9_DELTAS, 12),
    GameKind.P7: (P7_DELTAS, 20),
    GameKind.P8: (P8_DELTAS, 44),
    GameKind.P3: (P3_DELTAS, 8),
    GameKind.P5: (P5_DELTAS, 4),
}


@pytest.mark.parametrize("game", list(GameKind))
def test_delta_tables_reproduced(game):
    expected, jump = EXPECTED[game]
    report = verify_jump_bound(game)
    got = {c.case_id: c.max_delta for c in report.cases}
    assert got == {k: Fraction(v) for k, v in expected.items()}
    assert report.overall == jump
    assert report.overall == builtin_table(game).jump


def test_p9_case_l_witness():
    case = enumerate_case_delta(GameKind.P9, "L")
    assert case.max_delta == 10
    assert case.witness == "2I^0 -> F1^0,F2^0"


def test_p9_case_g_witness_matches_worst_case_row():
    case = enumerate_case_delta(GameKind.P9, "G")
    assert case.max_delta == 12
    # O,3L -> 2F0,2F1 with every vertex blue-degree 0
    assert case.witness == "L0^0,2L1^0,O^0 -> 2F0^0,2F1^0"


def test_p8_case_h_produces_n_shapes():
    case = enumerate_case_delta(GameKind.P8, "H")
    assert case.max_delta == 44
    assert case.witness == "L0^0,2L1^0,O^0 -> 2N0^0,2N1^0"


def test_p7_case_h_value():
    assert enumerate_case_delta(GameKind.P7, "H").max_delta == 16


def test_p8_case_p_value_and_witness():
    case = enumerate_case_delta(GameKind.P8, "P")
    assert case.max_delta == 30
    assert case.witness == "2I^0 -> F1^0,F2^0"


@pytest.mark.parametrize("game", list(GameKind))
def test_monotone_reduction_holds(game):
    assert verify_monotone_reduction(game)


def test_monotone_reduction_fails_on_perturbed_table():
    base = builtin_table(GameKind.P9)
    cells = {name: list(col) for name, col in base.columns.items()}
    # raising the blue-degree-1 cell of F2 above the 2+ row breaks both
    # monotonicity directions; push it just high enough to flip one check
    cells["F2"] = [cells["F2"][0], Fraction(19), cells["F2"][2]]
    perturbed = PotentialTable(GameKind.P9, base.jump, cells)
    assert not verify_monotone_reduction(GameKind.P9, perturbed)


def test_red_transitions_present():
    trans = red_move_transitions(GameKind.P9)
    assert ("O", "I") in trans
    assert ("I", "F0") in trans
    assert ("O", "F3") in trans  # case (I)
    assert all(src != "F4+" and dst != "F4+" for src, dst in trans)
