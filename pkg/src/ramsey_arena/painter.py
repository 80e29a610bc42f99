"""Painter strategies: total decision tables over endpoint types.

A strategy is an ordered rule list.  Each rule matches an unordered pair of
vertex types through two patterns and fixes the color plus a capital
directive.  Blue rules are listed first, so whenever a pair satisfies both a
blue and a red case the blue one wins (the tie rule).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .core import (BLUE, RED, BlueClass, GameError, GameKind, GameState,
                   RedClass, VertexType)


class StrategyError(GameError):
    """No rule covers the offered pair (a strategy-table bug)."""


class DirectiveKind(enum.Enum):
    NONE = "none"
    EDGE_UV = "uv"                    # the played edge becomes a capital
    EDGE_V_NEIGHBOR = "v-neighbor-edge"   # capital edge vw, w a red neighbor of v, w != u
    VERTEX_V = "v"                    # v becomes a capital vertex
    VERTEX_V_NEIGHBOR = "v-neighbor"  # capital vertex w, a red neighbor of v, w != u


@dataclass(frozen=True)
class CapitalDirective:
    """A concrete capital instruction resolved against a state."""

    kind: DirectiveKind
    capital: Optional[object] = None  # edge tuple or vertex id; None for NONE

    def __str__(self) -> str:
        if self.kind is DirectiveKind.NONE:
            return "none"
        if isinstance(self.capital, tuple):
            return f"edge({self.capital[0]}-{self.capital[1]})"
        return f"vertex({self.capital})"


NO_CAPITAL = CapitalDirective(DirectiveKind.NONE)

Atom = Tuple[Optional[RedClass], Optional[BlueClass]]  # None = wildcard


class Pattern:
    """A set of (red class, blue class) atoms; wildcards mean 'any'."""

    __slots__ = ("atoms", "text")

    def __init__(self, atoms: Iterable[Atom], text: str):
        self.atoms: FrozenSet[Atom] = frozenset(atoms)
        self.text = text

    def matches(self, vt: VertexType) -> bool:
        for red, blue in self.atoms:
            if (red is None or red is vt.red) and (blue is None or blue is vt.blue):
                return True
        return False

    def __str__(self) -> str:
        return self.text


_FAMILIES = {
    "L": (RedClass.L0, RedClass.L1),
    "N": (RedClass.N0, RedClass.N1),
}
_BLUE_TOKENS = {"B0": BlueClass.B0, "B1": BlueClass.B1, "B2+": BlueClass.B2P}
_RED_TOKENS = {c.value: c for c in RedClass}


def _f_family(game: GameKind) -> Tuple[RedClass, ...]:
    top = game.max_finite_distance
    return tuple((RedClass.F0, RedClass.F1, RedClass.F2, RedClass.F3)[: top + 1])


def parse_pattern(text: str, game: GameKind) -> Pattern:
    """Grammar: atoms joined by '|'; atom = 'any' | class | Bq | class^q
    where q is 0, 1 or 2+.  'L', 'N' and 'F' expand to their members."""
    atoms: List[Atom] = []
    for raw in text.split("|"):
        tok = raw.strip()
        if tok == "any":
            atoms.append((None, None))
            continue
        blue: Optional[BlueClass] = None
        if "^" in tok:
            tok, q = tok.split("^", 1)
            blue = _BLUE_TOKENS["B" + q.strip()]
            tok = tok.strip()
        if tok in _BLUE_TOKENS and blue is None:
            atoms.append((None, _BLUE_TOKENS[tok]))
            continue
        if tok == "F":
            atoms.extend((rc, blue) for rc in _f_family(game))
        elif tok in _FAMILIES:
            atoms.extend((rc, blue) for rc in _FAMILIES[tok])
        elif tok in _RED_TOKENS:
            atoms.append((_RED_TOKENS[tok], blue))
        else:
            raise ValueError(f"bad pattern token {raw!r}")
    return Pattern(atoms, text)


@dataclass(frozen=True)
class Rule:
    case_id: str
    u: Pattern
    v: Pattern
    color: str
    directive: DirectiveKind = DirectiveKind.NONE

    def match_orientation(self, tu: VertexType, tv: VertexType) -> Optional[bool]:
        """None if no match, else True when (u, v) binds as given and False
        when the pair matched swapped (directive's v is then the first
        endpoint)."""
        if self.u.matches(tu) and self.v.matches(tv):
            return True
        if self.u.matches(tv) and self.v.matches(tu):
            return False
        return None


class StrategyTable:
    def __init__(self, game: GameKind, rules: Sequence[Rule]):
        self.game = game
        self.rules = list(rules)
        blue_seen = False
        for r in reversed(self.rules):
            if r.color == BLUE:
                blue_seen = True
            elif blue_seen:
                raise ValueError("blue rules must precede red rules (tie rule)")

    def rule(self, case_id: str) -> Rule:
        for r in self.rules:
            if r.case_id == case_id:
                return r
        raise KeyError(case_id)

    def first_match(self, tu: VertexType, tv: VertexType) -> Tuple[Rule, bool]:
        for r in self.rules:
            orient = r.match_orientation(tu, tv)
            if orient is not None:
                return r, orient
        raise StrategyError(f"no rule covers the pair {tu}, {tv}")

    def covers(self, tu: VertexType, tv: VertexType) -> bool:
        try:
            self.first_match(tu, tv)
            return True
        except StrategyError:
            return False

    # -- serialization -------------------------------------------------------

    def dumps(self) -> str:
        lines = [f"game={self.game.value}"]
        for r in self.rules:
            line = f"{r.u} , {r.v} -> {r.color}"
            if r.directive is not DirectiveKind.NONE:
                line += f" capital={r.directive.value}"
            lines.append(f"[{r.case_id}] {line}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "StrategyTable":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        game = GameKind.parse(lines[0].split("=", 1)[1])
        rules = []
        for ln in lines[1:]:
            case_id = ""
            if ln.startswith("["):
                closing = ln.index("]")
                case_id = ln[1:closing]
                ln = ln[closing + 1:].strip()
            pats, _, action = ln.partition("->")
            pu, _, pv = pats.partition(",")
            parts = action.split()
            color = parts[0]
            directive = DirectiveKind.NONE
            for p in parts[1:]:
                if p.startswith("capital="):
                    directive = DirectiveKind(p.split("=", 1)[1])
            rules.append(Rule(case_id or f"r{len(rules)}",
                              parse_pattern(pu.strip(), game),
                              parse_pattern(pv.strip(), game),
                              color, directive))
        return cls(game, rules)


def _rules(game: GameKind, spec: Sequence[Tuple[str, str, str, str, DirectiveKind]]) -> StrategyTable:
    return StrategyTable(game, [
        Rule(cid, parse_pattern(pu, game), parse_pattern(pv, game), color, d)
        for cid, pu, pv, color, d in spec
    ])


_N = DirectiveKind.NONE

_BUILTIN_STRATEGIES = {
    # Blue cases (A)-(D) first, then red cases with capital directives.
    GameKind.P9: (
        ("A", "B2+|F3", "any", BLUE, _N),
        ("B", "L|F", "L|F", BLUE, _N),
        ("C", "I", "F1|F2", BLUE, _N),
        ("D", "O^0", "F2", BLUE, _N),
        ("E", "O", "O", RED, _N),
        ("F", "O", "I", RED, _N),
        ("G", "O", "L", RED, DirectiveKind.EDGE_V_NEIGHBOR),
        ("H", "O", "F0|F1", RED, _N),
        ("I", "O^1", "F2", RED, _N),
        ("J", "I", "I", RED, DirectiveKind.EDGE_UV),
        ("K", "I", "L", RED, DirectiveKind.EDGE_UV),
        ("L", "I", "F0", RED, _N),
    ),
    GameKind.P7: (
        ("A", "B2+|F2", "any", BLUE, _N),
        ("B", "L|F", "L|F", BLUE, _N),
        ("C", "I", "L1|F", BLUE, _N),
        ("D", "O^0", "F1", BLUE, _N),
        ("E", "O", "O", RED, _N),
        ("F", "O", "I", RED, _N),
        ("G", "O", "L", RED, DirectiveKind.EDGE_V_NEIGHBOR),
        ("H", "O", "F0", RED, _N),
        ("I", "O^1", "F1", RED, _N),
        ("J", "I", "I", RED, DirectiveKind.EDGE_UV),
        ("K", "I", "L0", RED, DirectiveKind.EDGE_UV),
    ),
    # The P8 blue case (A) reads V^{2+} or F3: F3 is the class with zero
    # blue-step delta in this game's table, and the published case figure
    # routes the F2 column through (D)/(L)/(C), so F2 cannot be in (A).
    GameKind.P8: (
        ("A", "B2+|F3", "any", BLUE, _N),
        ("B", "L|N|F", "L|N|F", BLUE, _N),
        ("C", "I", "N1|F1|F2|F3", BLUE, _N),
        ("D", "O^0", "F2", BLUE, _N),
        ("E", "O", "O", RED, _N),
        ("F", "O", "I", RED, _N),
        ("G", "O", "L0", RED, DirectiveKind.VERTEX_V),
        ("H", "O", "L1", RED, _N),
        ("I", "O", "N0", RED, DirectiveKind.VERTEX_V),
        ("J", "O", "N1", RED, DirectiveKind.VERTEX_V_NEIGHBOR),
        ("K", "O", "F0|F1", RED, _N),
        ("L", "O^1", "F2", RED, _N),
        ("M", "I", "I", RED, _N),
        ("N", "I", "L", RED, DirectiveKind.VERTEX_V),
        ("O", "I", "N0", RED, DirectiveKind.VERTEX_V),
        ("P", "I", "F0", RED, _N),
    ),
    # Exercise games: blue iff an endpoint is in I (P3 game); red iff one
    # endpoint is isolated and the other is isolated or a capital endpoint
    # (P5 game), the component's first edge being its capital.
    GameKind.P3: (
        ("A", "I", "any", BLUE, _N),
        ("B", "O", "O", RED, _N),
    ),
    GameKind.P5: (
        ("A", "F1", "any", BLUE, _N),
        ("B", "F0", "F0", BLUE, _N),
        ("C", "O", "O", RED, DirectiveKind.EDGE_UV),
        ("D", "O", "F0", RED, _N),
    ),
}


def builtin_strategy(game: GameKind) -> StrategyTable:
    """The published Painter strategy of the given game."""
    return _rules(game, _BUILTIN_STRATEGIES[game])


@dataclass(frozen=True)
class Decision:
    color: str
    directive: CapitalDirective
    case_id: str


def resolve_directive(view, kind: DirectiveKind, u: int, v: int,
                      neighbor: Optional[int] = None) -> CapitalDirective:
    """Turn a directive kind into a concrete capital for the edge u-v.

    `v` is the endpoint the matched rule's second pattern bound.  When the
    directive references a red neighbor w of v (w != u) and several exist,
    the smallest id wins unless `neighbor` overrides the choice.
    """
    if kind is DirectiveKind.NONE:
        return NO_CAPITAL
    if kind is DirectiveKind.EDGE_UV:
        return CapitalDirective(kind, (min(u, v), max(u, v)))
    if kind is DirectiveKind.VERTEX_V:
        return CapitalDirective(kind, v)
    candidates = sorted(w for w in view.red_neighbors(v) if w != u)
    if not candidates:
        raise GameError(f"directive needs a red neighbor of {v} other than {u}")
    w = neighbor if neighbor is not None else candidates[0]
    if w not in candidates:
        raise GameError(f"{w} is not an eligible neighbor of {v}")
    if kind is DirectiveKind.EDGE_V_NEIGHBOR:
        return CapitalDirective(kind, (min(v, w), max(v, w)))
    return CapitalDirective(kind, w)


def decide(view, strategy: StrategyTable, u: int, v: int) -> Decision:
    """Painter's reply for the unselected edge u-v.

    The view must expose vertex_type(), has_edge() and red_neighbors();
    both GameState and the arena engine qualify.
    """
    if view.has_edge(u, v):
        raise GameError(f"edge {u}-{v} was already selected")
    rule, forward = strategy.first_match(view.vertex_type(u), view.vertex_type(v))
    bound_u, bound_v = (u, v) if forward else (v, u)
    directive = resolve_directive(view, rule.directive, bound_u, bound_v)
    return Decision(rule.color, directive, rule.case_id)


def apply_decision(state: GameState, u: int, v: int, decision: Decision) -> GameState:
    after = state.add_edge(u, v, decision.color)
    if decision.directive.kind is not DirectiveKind.NONE:
        after = after.add_capital(decision.directive.capital)
    if not state.capitals <= after.capitals:
        raise GameError("capitals may never shrink")
    return after


def apply_move(state: GameState, strategy: StrategyTable, u: int, v: int) -> GameState:
    """decide() + add_edge + capital update, as one pure transition."""
    return apply_decision(state, u, v, decide(state, strategy, u, v))


def type_universe(game: GameKind) -> List[VertexType]:
    """All finite-range vertex types of this game, in a stable order."""
    reds: List[RedClass] = [RedClass.O]
    if game.small_path_max >= 2:
        reds.append(RedClass.I)
    if game.small_path_max >= 3:
        reds += [RedClass.L0, RedClass.L1]
    if game.small_path_max >= 4:
        reds += [RedClass.N0, RedClass.N1]
    if game is not GameKind.P3:
        reds += list(_f_family(game))
    return [VertexType(r, b) for r in reds for b in BlueClass]


def totality_gaps(strategy: StrategyTable) -> List[Tuple[VertexType, VertexType]]:
    """Unordered finite-range type pairs no rule covers (should be empty)."""
    universe = type_universe(strategy.game)
    gaps = []
    for i, tu in enumerate(universe):
        for tv in universe[i:]:
            if not strategy.covers(tu, tv):
                gaps.append((tu, tv))
    return gaps
