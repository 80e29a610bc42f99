"""Exhaustive reproduction of the per-case potential-change tables.

For every strategy case we enumerate all matching move configurations:
endpoint shapes (including center/end attachments and every capital choice
the directive leaves open), blue classes of every vertex in the small
components involved, and minimal big-component realizations for F-class
endpoints.  Vertices of big components that are not adjacent to the move
keep their distance to the fixed capital, so they cannot change class and
are left out of the enumeration.

Each configuration is realized as a concrete state; the move is applied
through the same code paths the arena uses, and the potential difference is
measured exactly.  The per-case maxima must reproduce the published tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .core import (BLUE, RED, BlueClass, GameKind, GameState, RedClass,
                   VertexType)
from .painter import (CapitalDirective, Decision, DirectiveKind, Rule,
                      StrategyTable, builtin_strategy, decide, apply_decision,
                      resolve_directive, type_universe)
from .potential import PotentialTable, builtin_table, potential
from .rational import INF, ExtendedRational


@dataclass
class MoveConfig:
    """One realized configuration of a strategy case."""

    case_id: str
    tu: VertexType
    tv: VertexType
    before: GameState
    after: GameState
    u: int
    v: int
    color: str
    directive: CapitalDirective
    delta: ExtendedRational         # infinite when the move leaves the table range
    affected: List[Tuple[int, VertexType, VertexType]]

    def witness(self) -> str:
        if not self.affected:
            return "(no class changes)"
        olds = _multiset_text([o for _, o, _ in self.affected])
        news = _multiset_text([n for _, _, n in self.affected])
        return f"{olds} -> {news}"


def _multiset_text(types: Sequence[VertexType]) -> str:
    counts: Dict[str, int] = {}
    for t in sorted(types, key=str):
        counts[str(t)] = counts.get(str(t), 0) + 1
    return ",".join(f"{n}{t}" if n > 1 else t for t, n in counts.items())


# ---------------------------------------------------------------------------
# Endpoint realizations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Layout:
    size: int
    edges: Tuple[Tuple[int, int], ...]   # relative ids
    anchor: int
    capital: Optional[object] = None     # relative edge or vertex
    small: bool = True                   # mates enumerable in blue class


def _layout_for(game: GameKind, red: RedClass) -> _Layout:
    path = lambda k: tuple((i, i + 1) for i in range(k - 1))
    if red is RedClass.O:
        return _Layout(1, (), 0)
    if red is RedClass.I:
        return _Layout(2, path(2), 0)
    if red is RedClass.L0:
        return _Layout(3, path(3), 1)
    if red is RedClass.L1:
        return _Layout(3, path(3), 0)
    if red is RedClass.N0:
        return _Layout(4, path(4), 1)
    if red is RedClass.N1:
        return _Layout(4, path(4), 0)
    dist = {RedClass.F0: 0, RedClass.F1: 1, RedClass.F2: 2, RedClass.F3: 3}[red]
    if game.capital_kind == "vertex":
        size = max(1, dist + 1)
        return _Layout(size, path(size), dist, capital=0, small=False)
    # Edge capital at (0, 1); the chain for positive distance hangs off 1.
    size = dist + 2
    return _Layout(size, path(size), 0 if dist == 0 else dist + 1,
                   capital=(0, 1), small=False)


@dataclass
class _Endpoint:
    layout: _Layout
    base: int

    @property
    def anchor(self) -> int:
        return self.base + self.layout.anchor

    @property
    def verts(self) -> List[int]:
        return [self.base + i for i in range(self.layout.size)]

    @property
    def mates(self) -> List[int]:
        if not self.layout.small:
            return []
        return [v for v in self.verts if v != self.anchor]


def _realize(game: GameKind, tu: VertexType, tv: VertexType,
             mate_blues: Sequence[BlueClass]) -> Tuple[GameState, int, int, List[int]]:
    """Build a concrete two-component state with the requested types.

    Returns (state, u, v, mates); helper vertices carry the blue pendants
    that set up blue degrees.
    """
    ep_u = _Endpoint(_layout_for(game, tu.red), 0)
    ep_v = _Endpoint(_layout_for(game, tv.red), 50)
    red_edges = [(ep.base + a, ep.base + b) for ep in (ep_u, ep_v) for a, b in ep.layout.edges]
    capitals = []
    for ep in (ep_u, ep_v):
        cap = ep.layout.capital
        if cap is None:
            continue
        if isinstance(cap, tuple):
            capitals.append((ep.base + cap[0], ep.base + cap[1]))
        else:
            capitals.append(ep.base + cap)
    mates = ep_u.mates + ep_v.mates
    if len(mate_blues) != len(mates):
        raise ValueError("one blue class per small-component mate required")
    blue_edges = []
    helper = 100
    for vert, blue in itertools.chain(
            [(ep_u.anchor, tu.blue), (ep_v.anchor, tv.blue)],
            zip(mates, mate_blues)):
        for _ in range(int(blue)):
            blue_edges.append((vert, helper))
            helper += 1
    state = GameState(game, vertices=ep_u.verts + ep_v.verts,
                      red_edges=red_edges, blue_edges=blue_edges,
                      capitals=capitals)
    assert state.vertex_type(ep_u.anchor) == tu and state.vertex_type(ep_v.anchor) == tv
    return state, ep_u.anchor, ep_v.anchor, mates


# ---------------------------------------------------------------------------
# Configuration enumeration
# ---------------------------------------------------------------------------


def _mate_blue_choices(count: int, exhaustive: bool) -> Iterator[Tuple[BlueClass, ...]]:
    if exhaustive:
        yield from itertools.product(tuple(BlueClass), repeat=count)
    else:
        yield (BlueClass.B0,) * count


def iter_rule_configs(game: GameKind, strategy: StrategyTable, rule: Rule,
                      table: PotentialTable) -> Iterator[MoveConfig]:
    """All configurations that route to `rule` under the full precedence."""
    universe = type_universe(game)
    seen_pairs = set()
    for ta, tb in itertools.combinations_with_replacement(universe, 2):
        matched, orient = _route(strategy, ta, tb)
        if matched is not rule:
            continue
        tu, tv = (ta, tb) if orient else (tb, ta)
        if (tu, tv) in seen_pairs:
            continue
        seen_pairs.add((tu, tv))
        first = True
        for cfg in iter_pair_configs(game, tu, tv, rule.color, rule.directive,
                                     rule.case_id, table):
            if first:
                decision = decide(cfg.before, strategy, cfg.u, cfg.v)
                assert decision.case_id == rule.case_id, (
                    f"routing mismatch: expected {rule.case_id}, got {decision.case_id}")
                first = False
            yield cfg


def iter_pair_configs(game: GameKind, tu: VertexType, tv: VertexType,
                      color: str, directive_kind: DirectiveKind, case_id: str,
                      table: PotentialTable) -> Iterator[MoveConfig]:
    """All realized configurations of one decided type pair."""
    mates_template = (_Endpoint(_layout_for(game, tu.red), 0).mates
                      + _Endpoint(_layout_for(game, tv.red), 50).mates)
    # Blue-degree choices of component mates only matter for red moves.
    for mate_blues in _mate_blue_choices(len(mates_template), color == RED):
        state, u, v, _ = _realize(game, tu, tv, mate_blues)
        for directive in _directive_choices(state, directive_kind, u, v):
            yield _measure(state, tu, tv, u, v,
                           Decision(color, directive, case_id), table)


def _route(strategy: StrategyTable, ta: VertexType, tb: VertexType):
    rule, orient = strategy.first_match(ta, tb)
    return rule, orient


def _directive_choices(state: GameState, kind: DirectiveKind, u: int, v: int
                       ) -> Iterator[CapitalDirective]:
    if kind in (DirectiveKind.EDGE_V_NEIGHBOR, DirectiveKind.VERTEX_V_NEIGHBOR):
        for w in sorted(state.red_neighbors(v) - {u}):
            yield resolve_directive(state, kind, u, v, neighbor=w)
    else:
        yield resolve_directive(state, kind, u, v)


def _measure(state: GameState, tu: VertexType, tv: VertexType, u: int, v: int,
             decision: Decision, table: PotentialTable) -> MoveConfig:
    before_f = potential(state, table)
    assert before_f.is_finite, "realized configuration must start finite"
    after = apply_decision(state, u, v, decision)
    after_f = potential(after, table)
    before_types = state.classify()
    after_types = after.classify()
    affected = [(x, before_types[x], after_types[x])
                for x in sorted(state.vertices)
                if before_types[x] != after_types[x]]
    delta = INF if not after_f.is_finite else after_f - before_f
    return MoveConfig(decision.case_id, tu, tv, state, after, u, v,
                      decision.color, decision.directive, delta, affected)


# ---------------------------------------------------------------------------
# Public verification operations
# ---------------------------------------------------------------------------


@dataclass
class CaseDelta:
    case_id: str
    color: str
    max_delta: ExtendedRational
    witness: str
    configs: int


def enumerate_case_delta(game: GameKind, case_id: str,
                         strategy: Optional[StrategyTable] = None,
                         table: Optional[PotentialTable] = None) -> CaseDelta:
    """Exact max potential change over all configurations of one case."""
    strategy = strategy or builtin_strategy(game)
    table = table or builtin_table(game)
    rule = strategy.rule(case_id)
    best: Optional[MoveConfig] = None
    count = 0
    for cfg in iter_rule_configs(game, strategy, rule, table):
        count += 1
        if best is None or cfg.delta > best.delta:
            best = cfg
    if best is None:
        raise ValueError(f"case {case_id} matches no configuration")
    return CaseDelta(case_id, rule.color, best.delta, best.witness(), count)


@dataclass
class JumpReport:
    game: GameKind
    cases: List[CaseDelta]
    overall: ExtendedRational

    def dumps(self) -> str:
        lines = [f"game={self.game.value}"]
        for c in self.cases:
            lines.append(f"case={c.case_id} color={c.color} max_delta={c.max_delta} "
                         f"witness={c.witness}")
        lines.append(f"overall={self.overall}")
        return "\n".join(lines) + "\n"


def verify_jump_bound(game: GameKind,
                      strategy: Optional[StrategyTable] = None,
                      table: Optional[PotentialTable] = None) -> JumpReport:
    """Per-case maxima and the overall jump for the game's strategy."""
    strategy = strategy or builtin_strategy(game)
    table = table or builtin_table(game)
    cases = [enumerate_case_delta(game, r.case_id, strategy, table)
             for r in strategy.rules]
    overall = max(c.max_delta for c in cases)
    return JumpReport(game, cases, overall)


def red_move_transitions(game: GameKind,
                         strategy: Optional[StrategyTable] = None,
                         table: Optional[PotentialTable] = None
                         ) -> Set[Tuple[str, str]]:
    """All (column, column) class transitions a red move can cause."""
    strategy = strategy or builtin_strategy(game)
    table = table or builtin_table(game)
    seen: Set[Tuple[str, str]] = set()
    for rule in strategy.rules:
        if rule.color != RED:
            continue
        for cfg in iter_rule_configs(game, strategy, rule, table):
            if not cfg.delta.is_finite:
                continue
            for _, old, new in cfg.affected:
                seen.add((table.column_name(old.red), table.column_name(new.red)))
    return seen


def verify_monotone_reduction(game: GameKind,
                              table: Optional[PotentialTable] = None) -> bool:
    """Check that red-move cell gains shrink as the blue class grows.

    For every class transition X -> Z reachable by a red move and blue
    classes i < j: c(Z^i) - c(X^i) >= c(Z^j) - c(X^j).
    """
    table = table or builtin_table(game)
    for x_col, z_col in red_move_transitions(game, table=table):
        x_cells = table.columns[x_col]
        z_cells = table.columns[z_col]
        gains = [z_cells[i].finite - x_cells[i].finite for i in range(3)]
        if not (gains[0] >= gains[1] >= gains[2]):
            return False
    return True


# ---------------------------------------------------------------------------
# Transcript audits
# ---------------------------------------------------------------------------


@dataclass
class AuditViolation:
    round: int
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"round {self.round}: {self.kind}: {self.detail}"


def audit_transcript(transcript, table: PotentialTable,
                     strategy: Optional[StrategyTable] = None) -> List[AuditViolation]:
    """Replay a transcript and check every recorded potential step.

    Flags per-move jumps above the table bound, mismatches between recorded
    and recomputed potentials, and (when a strategy is given) moves where the
    recorded color or capital differs from the strategy's decision.
    """
    state = GameState.empty(table.game)
    violations: List[AuditViolation] = []
    for move in transcript.moves:
        f_before = potential(state, table)
        if f_before != move.f_before:
            violations.append(AuditViolation(
                move.round, "potential-mismatch",
                f"recorded f_before={move.f_before}, recomputed {f_before}"))
        if strategy is not None:
            expected = decide(state, strategy, move.u, move.v)
            if expected.color != move.color or str(expected.directive) != move.capital:
                violations.append(AuditViolation(
                    move.round, "strategy-mismatch",
                    f"strategy says {expected.color}/{expected.directive}, "
                    f"transcript has {move.color}/{move.capital}"))
        state = state.add_edge(move.u, move.v, move.color)
        if move.capital != "none":
            state = state.add_capital(_parse_capital(move.capital))
        f_after = potential(state, table)
        if f_after != move.f_after:
            violations.append(AuditViolation(
                move.round, "potential-mismatch",
                f"recorded f_after={move.f_after}, recomputed {f_after}"))
        if f_after.is_finite and f_before.is_finite:
            if f_after.finite - f_before.finite > table.jump:
                violations.append(AuditViolation(
                    move.round, "jump-exceeded",
                    f"delta {f_after.finite - f_before.finite} > {table.jump}"))
        elif not f_after.is_finite:
            violations.append(AuditViolation(move.round, "infinite-potential",
                                             "host graph left the finite range"))
    return violations


def _parse_capital(text: str):
    if text.startswith("edge("):
        a, b = text[5:-1].split("-")
        return (int(a), int(b))
    if text.startswith("vertex("):
        return int(text[7:-1])
    raise ValueError(f"bad capital field {text!r}")
