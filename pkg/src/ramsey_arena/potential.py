"""Potential tables and the potential function f(G, T).

Each game carries a table assigning an extended-rational value to every
(red class, blue class) cell.  The potential of a host graph is the sum of
cell values over all vertices; it is infinite exactly when the red graph has
a cycle or some vertex falls beyond the table's finite range.  From a table
we also extract the (alpha, beta) coefficients of the round lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .core import (BlueClass, GameKind, GameState, RedClass, VertexType,
                   longest_path)
from .rational import INF, ExtendedRational, parse_rational


class UnknownClassError(KeyError):
    """The red class has no column in this game's table."""


@dataclass(frozen=True)
class FamilySpec:
    """The blue target family: all H without isolated vertices with
    alpha*v(H) + beta*v1(H) >= x."""

    alpha: Fraction
    beta: Fraction
    x: Fraction

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")

    def accepts(self, v: int, v1: int) -> bool:
        return self.alpha * v + self.beta * v1 >= self.x


# Which table column a red class reads from, per game.  The P9 table keeps a
# single L column; the P7 table tracks the center/end split.
_COLLAPSE = {
    GameKind.P9: {RedClass.L0: "L", RedClass.L1: "L"},
}


class PotentialTable:
    """Immutable per-game cell table plus the per-move jump bound."""

    def __init__(self, game: GameKind, jump: Fraction,
                 columns: Dict[str, Tuple[ExtendedRational, ExtendedRational, ExtendedRational]]):
        self.game = game
        self.jump = Fraction(jump)
        if self.jump <= 0:
            raise ValueError("jump must be positive")
        self.columns: Dict[str, Tuple[ExtendedRational, ...]] = {
            name: tuple(ExtendedRational(v) for v in cells)
            for name, cells in columns.items()
        }
        self._check_invariants()

    def _check_invariants(self) -> None:
        o = self.columns.get("O")
        if o is None or o[0] != 0:
            raise ValueError("cell (O, 0) must exist and equal 0")
        for name, cells in self.columns.items():
            if not (cells[0] <= cells[1] <= cells[2]):
                raise ValueError(f"column {name} must be nondecreasing in blue class")

    def column_name(self, red: RedClass) -> Optional[str]:
        name = _COLLAPSE.get(self.game, {}).get(red, red.value)
        return name if name in self.columns else None

    def value(self, vt: VertexType) -> ExtendedRational:
        """Cell lookup; raises UnknownClassError off the table."""
        name = self.column_name(vt.red)
        if name is None:
            raise UnknownClassError(f"{vt.red} has no column in the {self.game.value} table")
        return self.columns[name][int(vt.blue)]

    def value_or_inf(self, vt: VertexType) -> ExtendedRational:
        name = self.column_name(vt.red)
        return INF if name is None else self.columns[name][int(vt.blue)]

    def finite_column_names(self) -> List[str]:
        return [n for n, cells in self.columns.items() if cells[0].is_finite]

    def min_row(self, blue: BlueClass) -> Fraction:
        vals = [cells[int(blue)] for cells in self.columns.values() if cells[int(blue)].is_finite]
        return min(v.finite for v in vals)

    # -- serialization -------------------------------------------------------

    def dumps(self) -> str:
        lines = [f"game={self.game.value} jump={self.jump}"]
        for name, cells in self.columns.items():
            lines.append(f"{name}: " + " ".join(str(c) for c in cells))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "PotentialTable":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        header = dict(item.split("=", 1) for item in lines[0].split())
        game = GameKind.parse(header["game"])
        jump = parse_rational(header["jump"])
        columns = {}
        for ln in lines[1:]:
            name, rest = ln.split(":", 1)
            cells = rest.split()
            if len(cells) != 3:
                raise ValueError(f"bad table row {ln!r}")
            columns[name.strip()] = tuple(ExtendedRational(c) for c in cells)
        return cls(game, jump, columns)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PotentialTable)
                and self.game is other.game
                and self.jump == other.jump
                and self.columns == other.columns)


_INF3 = ("inf", "inf", "inf")

_BUILTIN = {
    GameKind.P9: (12, {
        "O": (0, 8, 20), "I": (6, 13, 20), "L": (8, 14, 20),
        "F0": (8, 14, 20), "F1": (10, 15, 20), "F2": (12, 16, 20),
        "F3": (20, 20, 20), "F4+": _INF3,
    }),
    GameKind.P7: (20, {
        "O": (0, 12, 32), "I": (10, 21, 32), "L0": (12, 22, 32),
        "L1": (14, 23, 32), "F0": (14, 23, 32), "F1": (16, 24, 32),
        "F2": (32, 32, 32), "F3": _INF3, "F4+": _INF3,
    }),
    GameKind.P8: (44, {
        "O": (0, 28, 72), "I": (22, 47, 72), "L0": (28, 50, 72),
        "L1": (30, 52, 74), "N0": (32, 54, 76), "N1": (34, 53, 72),
        "F0": (28, 50, 72), "F1": (34, 53, 72), "F2": (40, 56, 72),
        "F3": (72, 72, 72), "F4+": _INF3,
    }),
    GameKind.P3: (8, {
        "O": (0, 5, 10), "I": (4, 7, 10),
    }),
    GameKind.P5: (4, {
        "O": (0, 3, 6), "F0": (2, 4, 6), "F1": (4, 5, 6),
        "F2": _INF3, "F3": _INF3, "F4+": _INF3,
    }),
}


def builtin_table(game: GameKind) -> PotentialTable:
    """The published potential table of the given game."""
    jump, columns = _BUILTIN[game]
    return PotentialTable(game, Fraction(jump), columns)


def vertex_value(table: PotentialTable, vt: VertexType) -> ExtendedRational:
    return table.value(vt)


def potential(state: GameState, table: PotentialTable) -> ExtendedRational:
    """f(G, T): sum of cell values, infinite on dead states.

    The potential is infinite when the red graph has a cycle, contains the
    game's forbidden path, or some vertex classifies beyond the table's
    finite range.  Big components without capitals raise (via classify)
    unless one of the infinity conditions already holds.
    """
    if state.game is not table.game:
        raise ValueError("state and table belong to different games")
    if state.has_red_cycle():
        return INF
    if longest_path(state.red_edges) >= state.game.red_path:
        return INF
    total = ExtendedRational(0)
    for vt in state.classify().values():
        total = total + table.value_or_inf(vt)
        if not total.is_finite:
            return INF
    return total


def extract_bound(table: PotentialTable) -> Tuple[Fraction, Fraction]:
    """(alpha, beta) of the family bound carried by this table.

    alpha = (min of the 2+ row) / jump and beta = (min of row 1 minus min of
    the 2+ row) / jump; the round lower bound for forcing a blue member of
    H(alpha, beta, x) is then x.
    """
    m2 = table.min_row(BlueClass.B2P)
    m1 = table.min_row(BlueClass.B1)
    return (m2 / table.jump, (m1 - m2) / table.jump)


def family_for(table: PotentialTable, x: Fraction) -> FamilySpec:
    alpha, beta = extract_bound(table)
    return FamilySpec(alpha, beta, Fraction(x))


def theorem2_bound(game: GameKind, v: int, v1: int) -> Fraction:
    """Round lower bound alpha*v + beta*v1 for forcing a blue G with
    v vertices, v1 of them of degree 1."""
    if v < 2:
        raise ValueError("v must be at least 2")
    if not 0 <= v1 <= v:
        raise ValueError("v1 must lie between 0 and v")
    alpha, beta = extract_bound(builtin_table(game))
    return alpha * v + beta * v1
