"""Game loop: drive a Builder against a Painter and audit every move.

The engine keeps the colored graph, component classification, capitals and
the potential incrementally, so long simulations stay cheap; its semantics
are the pure graph-core operations (checked by replay tests).  Every played
game yields a Transcript whose per-move potential fields make the jump
bound auditable after the fact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .core import (BLUE, RED, BlueClass, GameError, GameKind, GameState,
                   MissingCapitalError, RedClass, VertexType,
                   component_has_cycle, components, f_class_for_distance,
                   longest_path, longest_path_through_edge, norm_edge,
                   _tree_longest_path)
from .painter import (CapitalDirective, Decision, DirectiveKind, StrategyTable,
                      builtin_strategy, decide)
from .potential import FamilySpec, PotentialTable, builtin_table
from .rational import INF, ExtendedRational


class SizeLimitError(GameError):
    """The blue graph is too large for exhaustive family search."""


# ---------------------------------------------------------------------------
# Targets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathTarget:
    n: int

    def describe(self) -> str:
        return f"P{self.n}"


@dataclass(frozen=True)
class FamilyTarget:
    family: FamilySpec

    def describe(self) -> str:
        f = self.family
        return f"family({f.alpha},{f.beta},{f.x})"


@dataclass(frozen=True)
class TargetSpec:
    """Red target: the path P_k (plus all cycles unless disabled);
    blue target: an explicit path or a graph family."""

    red_k: int
    blue: object  # PathTarget | FamilyTarget | None
    red_cycles: bool = True

    def __post_init__(self):
        if self.red_k < 2:
            raise ValueError("red path target needs k >= 2")
        if isinstance(self.blue, PathTarget) and self.blue.n < 2:
            raise ValueError("blue path target needs n >= 2")
        if isinstance(self.blue, FamilyTarget) and self.blue.family.x <= 0:
            raise ValueError("family target needs x > 0")

    def describe_blue(self) -> str:
        return self.blue.describe() if self.blue is not None else "none"


RED_TARGET = "red-target"
BLUE_TARGET = "blue-target"
BUDGET = "move-budget-exhausted"
BUILDER_FAULT = "builder-fault"
BUILDER_STOPPED = "builder-stopped"


def family_score(state: GameState, alpha: Fraction, beta: Fraction = Fraction(-1),
                 cap: int = 16) -> Optional[Fraction]:
    """Best alpha*v(H) + beta*v1(H) over blue subgraphs H without isolated
    vertices; None when the blue graph is empty.

    For a fixed vertex set the induced blue subgraph maximizes every degree,
    hence minimizes the number of degree-1 vertices, so scanning vertex
    subsets is exhaustive over all subgraphs.
    """
    adj = state.blue_adjacency()
    verts = sorted(adj)
    if not verts:
        return None
    if len(verts) > cap:
        raise SizeLimitError(f"{len(verts)} blue vertices exceed the cap {cap}")
    index = {v: i for i, v in enumerate(verts)}
    masks = [0] * len(verts)
    for v in verts:
        for w in adj[v]:
            masks[index[v]] |= 1 << index[w]
    best: Optional[Fraction] = None
    for subset in range(1, 1 << len(verts)):
        v_count = 0
        v1_count = 0
        ok = True
        m = subset
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            deg = bin(masks[i] & subset).count("1")
            if deg == 0:
                ok = False
                break
            v_count += 1
            if deg == 1:
                v1_count += 1
        if not ok:
            continue
        score = alpha * v_count + beta * v1_count
        if best is None or score > best:
            best = score
    return best


def check_termination(state: GameState, targets: TargetSpec) -> Optional[str]:
    """Outcome for a finished position, None while the game is live."""
    if targets.red_cycles and state.has_red_cycle():
        return RED_TARGET
    if longest_path(state.red_edges) >= targets.red_k:
        return RED_TARGET
    if isinstance(targets.blue, PathTarget):
        if state.has_blue_path_at_least(targets.blue.n):
            return BLUE_TARGET
    elif isinstance(targets.blue, FamilyTarget):
        fam = targets.blue.family
        score = family_score(state, fam.alpha, fam.beta)
        if score is not None and score >= fam.x:
            return BLUE_TARGET
    return None


# ---------------------------------------------------------------------------
# Transcript
# ---------------------------------------------------------------------------


@dataclass
class Move:
    round: int
    u: int
    v: int
    color: str
    capital: str
    f_before: Optional[ExtendedRational]
    f_after: Optional[ExtendedRational]


@dataclass
class Transcript:
    game: GameKind
    red_k: int
    blue_desc: str
    moves: List[Move] = field(default_factory=list)
    outcome: str = BUDGET
    outcome_round: Optional[int] = None

    def dumps(self) -> str:
        lines = [f"game={self.game.value} red_k={self.red_k} blue={self.blue_desc}"]
        for m in self.moves:
            if m.f_before is None or m.f_after is None:
                raise ValueError("only audited transcripts can be serialized")
            lines.append(f"round={m.round} edge={m.u}-{m.v} color={m.color} "
                         f"capital={m.capital} f_before={m.f_before} f_after={m.f_after}")
        lines.append(f"outcome={self.outcome} round={self.outcome_round or 0}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Transcript":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        head = dict(p.split("=", 1) for p in lines[0].split())
        t = cls(GameKind.parse(head["game"]), int(head["red_k"]), head["blue"])
        for ln in lines[1:]:
            fields = dict(p.split("=", 1) for p in ln.split())
            if "outcome" in fields:
                t.outcome = fields["outcome"]
                t.outcome_round = int(fields["round"]) or None
                continue
            u, v = fields["edge"].split("-")
            t.moves.append(Move(int(fields["round"]), int(u), int(v),
                                fields["color"], fields["capital"],
                                ExtendedRational(fields["f_before"]),
                                ExtendedRational(fields["f_after"])))
        return t


# ---------------------------------------------------------------------------
# Incremental engine
# ---------------------------------------------------------------------------


class _Component:
    __slots__ = ("verts", "capital")

    def __init__(self, verts: List[int], capital=None):
        self.verts = verts
        self.capital = capital


class Engine:
    """Mutable board with incremental classification and potential.

    With track_types=False only adjacency and red-path/cycle bookkeeping is
    maintained (enough for scripted Painters and started games); builtin
    Painters need track_types=True.
    """

    def __init__(self, game: GameKind, table: Optional[PotentialTable] = None,
                 track_types: bool = True):
        self.game = game
        self.table = table or builtin_table(game)
        self.track_types = track_types
        self.edges: Dict[Tuple[int, int], str] = {}
        self.red_adj: Dict[int, Set[int]] = {}
        self.blue_adj: Dict[int, Set[int]] = {}
        self.blue_deg: Dict[int, int] = {}
        self.comp_of: Dict[int, _Component] = {}
        self.red_class: Dict[int, RedClass] = {}
        self.capitals: Set = set()
        self.potential_value: Fraction = Fraction(0)
        self.infinite = False
        self.red_cycle = False
        self.longest_red = 0
        self._touched: List[int] = []
        self._next_id = 0

    # -- view protocol (shared with GameState) --------------------------------

    def vertex_type(self, v: int) -> VertexType:
        if not self.track_types:
            raise RuntimeError("engine was built without type tracking")
        red = self.red_class.get(v, RedClass.O)
        return VertexType(red, BlueClass.of_degree(self.blue_deg.get(v, 0)))

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def edge_color(self, u: int, v: int) -> Optional[str]:
        return self.edges.get(norm_edge(u, v))

    def red_neighbors(self, v: int) -> Set[int]:
        return self.red_adj.get(v, set())

    def blue_degree(self, v: int) -> int:
        return self.blue_deg.get(v, 0)

    def touched(self) -> List[int]:
        return self._touched

    def fresh(self, count: int = 1) -> Tuple[int, ...]:
        return tuple(range(self._next_id, self._next_id + count))

    # -- mutation --------------------------------------------------------------

    def _materialize(self, v: int) -> None:
        if v not in self.blue_deg:
            self.blue_deg[v] = 0
            self._touched.append(v)
        self._next_id = max(self._next_id, v + 1)

    def _cell(self, v: int) -> ExtendedRational:
        red = self.red_class.get(v, RedClass.O)
        return self.table.value_or_inf(
            VertexType(red, BlueClass.of_degree(self.blue_deg.get(v, 0))))

    def potential_now(self) -> ExtendedRational:
        if not self.track_types:
            raise RuntimeError("engine was built without type tracking")
        return INF if self.infinite else ExtendedRational(self.potential_value)

    def _shift(self, v: int, before: ExtendedRational) -> None:
        after = self._cell(v)
        if not after.is_finite:
            self.infinite = True
            return
        self.potential_value += after.finite - before.finite

    def apply(self, u: int, v: int, decision: Decision) -> None:
        e = norm_edge(u, v)
        if e in self.edges:
            raise GameError(f"edge {e} was already selected")
        self._materialize(u)
        self._materialize(v)
        self.edges[e] = decision.color
        if decision.color == BLUE:
            cells = {x: self._cell(x) for x in (u, v)} if self.track_types else {}
            self.blue_adj.setdefault(u, set()).add(v)
            self.blue_adj.setdefault(v, set()).add(u)
            self.blue_deg[u] += 1
            self.blue_deg[v] += 1
            if self.track_types:
                for x, before in cells.items():
                    self._shift(x, before)
            if decision.directive.kind is not DirectiveKind.NONE:
                raise GameError("blue moves never add capitals")
            return
        self._apply_red(u, v, decision.directive)

    def _apply_red(self, u: int, v: int, directive: CapitalDirective) -> None:
        cu = self.comp_of.get(u)
        cv = self.comp_of.get(v)
        self.red_adj.setdefault(u, set()).add(v)
        self.red_adj.setdefault(v, set()).add(u)
        if cu is not None and cu is cv:
            self.red_cycle = True
            self.infinite = True
            return
        members = (cu.verts if cu else [u]) + (cv.verts if cv else [v])
        capital = None
        for c in (cu, cv):
            if c and c.capital is not None:
                if capital is not None:
                    raise GameError("red move would merge two capitals")
                capital = c.capital
        if directive.kind is not DirectiveKind.NONE:
            if capital is not None:
                raise GameError("component already has a capital")
            capital = directive.capital
            self.capitals.add(capital)
        comp = _Component(members, capital)
        for x in members:
            self.comp_of[x] = comp
        self._reclassify(comp)
        self.longest_red = max(self.longest_red,
                               _tree_longest_path(comp.verts, self.red_adj))

    def _reclassify(self, comp: _Component, update_potential: bool = True) -> None:
        if not self.track_types:
            return
        before = {x: self._cell(x) for x in comp.verts} if update_potential else {}
        n = len(comp.verts)
        if comp.capital is not None:
            sources = list(comp.capital) if isinstance(comp.capital, tuple) else [comp.capital]
            dist = {s: 0 for s in sources}
            frontier = list(sources)
            while frontier:
                nxt = []
                for x in frontier:
                    for y in self.red_adj.get(x, ()):
                        if y not in dist:
                            dist[y] = dist[x] + 1
                            nxt.append(y)
                frontier = nxt
            for x in comp.verts:
                self.red_class[x] = f_class_for_distance(dist[x])
        elif n <= self.game.small_path_max and all(
                len(self.red_adj.get(x, ())) <= 2 for x in comp.verts):
            small = {1: (RedClass.O, RedClass.O), 2: (RedClass.I, RedClass.I),
                     3: (RedClass.L0, RedClass.L1), 4: (RedClass.N0, RedClass.N1)}
            inner, outer = small[n]
            for x in comp.verts:
                self.red_class[x] = inner if len(self.red_adj.get(x, ())) == 2 else outer
        else:
            raise MissingCapitalError(
                f"big red component {sorted(comp.verts)} has no capital")
        for x, cell in before.items():
            self._shift(x, cell)

    # -- exporting --------------------------------------------------------------

    def to_state(self) -> GameState:
        red = [e for e, c in self.edges.items() if c == RED]
        blue = [e for e, c in self.edges.items() if c == BLUE]
        return GameState(self.game, self.blue_deg.keys(), red, blue, self.capitals)

    def preload(self, state: GameState) -> None:
        if state.game is not self.game:
            raise ValueError("initial state belongs to a different game")
        if self.edges:
            raise GameError("preload requires an empty engine")
        for v in state.vertices:
            self._materialize(v)
        for u, v in sorted(state.red_edges):
            self.edges[(u, v)] = RED
            self.red_adj.setdefault(u, set()).add(v)
            self.red_adj.setdefault(v, set()).add(u)
        for u, v in sorted(state.blue_edges):
            self.edges[(u, v)] = BLUE
            self.blue_adj.setdefault(u, set()).add(v)
            self.blue_adj.setdefault(v, set()).add(u)
            self.blue_deg[u] += 1
            self.blue_deg[v] += 1
        for comp in components(self.red_adj):
            component = _Component(list(comp), None)
            for x in comp:
                self.comp_of[x] = component
            if component_has_cycle(comp, self.red_adj):
                self.red_cycle = True
                self.infinite = True
            else:
                self.longest_red = max(self.longest_red,
                                       _tree_longest_path(comp, self.red_adj))
        for cap in state.capitals:
            anchor = cap[0] if isinstance(cap, tuple) else cap
            self.comp_of[anchor].capital = cap
            self.capitals.add(cap)
        if self.track_types and not self.red_cycle:
            for comp in {id(c): c for c in self.comp_of.values()}.values():
                self._reclassify(comp, update_potential=False)
            self.potential_value = Fraction(0)
            for x in self.blue_deg:
                cell = self._cell(x)
                if not cell.is_finite:
                    self.infinite = True
                    return
                self.potential_value += cell.finite


# ---------------------------------------------------------------------------
# Painters
# ---------------------------------------------------------------------------


class BuiltinPainter:
    """The published strategy Painter for one game."""

    needs_types = True

    def __init__(self, game: GameKind, strategy: Optional[StrategyTable] = None):
        self.game = game
        self.strategy = strategy or builtin_strategy(game)

    def decide(self, view, u: int, v: int) -> Decision:
        return decide(view, self.strategy, u, v)


class FixedColorPainter:
    needs_types = False

    def __init__(self, color: str):
        self.color = color

    def decide(self, view, u: int, v: int) -> Decision:
        return Decision(self.color, CapitalDirective(DirectiveKind.NONE), "fixed")


class ScriptedPainter:
    """Replays a fixed color sequence; used to exhaust Painter replies."""

    needs_types = False

    def __init__(self, colors: Sequence[str]):
        self.colors = list(colors)
        self.idx = 0

    def decide(self, view, u: int, v: int) -> Decision:
        if self.idx >= len(self.colors):
            raise GameError("script exhausted")
        color = self.colors[self.idx]
        self.idx += 1
        return Decision(color, CapitalDirective(DirectiveKind.NONE), "scripted")


# ---------------------------------------------------------------------------
# Play loop
# ---------------------------------------------------------------------------


def play(builder, painter, targets: TargetSpec, max_rounds: int,
         game: Optional[GameKind] = None,
         initial: Optional[GameState] = None,
         table: Optional[PotentialTable] = None) -> Transcript:
    """Alternate Builder and Painter until a target is hit or the budget runs out.

    The transcript records the audited potential around every move whenever
    the Painter uses types (builtin strategies); every recorded jump is then
    checkable against the table bound.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    game = game or getattr(painter, "game", None) or (initial.game if initial else None)
    if game is None:
        raise ValueError("game kind is required")
    track = getattr(painter, "needs_types", False)
    engine = Engine(game, table=table, track_types=track)
    if initial is not None:
        engine.preload(initial)
    transcript = Transcript(game, targets.red_k, targets.describe_blue())

    blue_target_n = targets.blue.n if isinstance(targets.blue, PathTarget) else None
    blue_hit = (initial is not None and blue_target_n is not None
                and initial.has_blue_path_at_least(blue_target_n))

    outcome = None
    if initial is not None:
        outcome = _engine_outcome(engine, targets, blue_hit)
    rnd = 0
    while outcome is None and rnd < max_rounds:
        rnd += 1
        proposal = builder.propose(engine)
        if proposal is None:
            transcript.outcome = BUILDER_STOPPED
            transcript.outcome_round = rnd - 1
            return transcript
        u, v = proposal
        if u == v or engine.has_edge(u, v):
            transcript.outcome = BUILDER_FAULT
            transcript.outcome_round = rnd
            return transcript
        decision = painter.decide(engine, u, v)
        f_before = engine.potential_now() if track else None
        engine.apply(u, v, decision)
        f_after = engine.potential_now() if track else None
        transcript.moves.append(Move(rnd, u, v, decision.color,
                                     str(decision.directive), f_before, f_after))
        if (decision.color == BLUE and blue_target_n is not None and not blue_hit
                and longest_path_through_edge(engine.blue_adj, u, v, blue_target_n)
                >= blue_target_n):
            blue_hit = True
        outcome = _engine_outcome(engine, targets, blue_hit)
    if outcome is not None:
        transcript.outcome = outcome
        transcript.outcome_round = rnd
    else:
        transcript.outcome = BUDGET
        transcript.outcome_round = None
    return transcript


def _engine_outcome(engine: Engine, targets: TargetSpec, blue_hit: bool) -> Optional[str]:
    if targets.red_cycles and engine.red_cycle:
        return RED_TARGET
    if engine.longest_red >= targets.red_k:
        return RED_TARGET
    if blue_hit:
        return BLUE_TARGET
    if isinstance(targets.blue, FamilyTarget):
        fam = targets.blue.family
        score = family_score(engine.to_state(), fam.alpha, fam.beta)
        if score is not None and score >= fam.x:
            return BLUE_TARGET
    return None


def replay(transcript: Transcript) -> GameState:
    """Re-derive the final state from a transcript (pure ops)."""
    state = GameState.empty(transcript.game)
    for m in transcript.moves:
        state = state.add_edge(m.u, m.v, m.color)
        if m.capital != "none":
            state = state.add_capital(_capital_from_text(m.capital))
    return state


def _capital_from_text(text: str):
    if text.startswith("edge("):
        a, b = text[5:-1].split("-")
        return (int(a), int(b))
    if text.startswith("vertex("):
        return int(text[7:-1])
    raise ValueError(f"bad capital {text!r}")
