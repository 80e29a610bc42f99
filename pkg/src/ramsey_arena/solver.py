"""Exact game values of tiny online Ramsey games by full minimax.

Builder minimizes rounds, Painter maximizes: Builder wins within r rounds
iff some edge works against both colors.  States are deduplicated by the
canonical form of the colored graph; fresh vertices are interchangeable, so
move generation offers one fresh-fresh representative and one fresh
neighbor per touched vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .canon import canonical_key
from .core import GameState, adjacency, component_has_cycle, components, longest_path

Edge = Tuple[int, int]
EdgeSet = FrozenSet[Edge]

PATH = "path"
CYCLE = "cycle"


@dataclass(frozen=True)
class SolveConfig:
    """red target: the path P_k; blue target: P_n or the cycle C_n."""

    red_k: int
    blue_n: int
    max_rounds: int
    blue_target: str = PATH
    vertex_budget: Optional[int] = None  # default 2 * max_rounds: a move touches <= 2 new

    def __post_init__(self):
        if self.red_k < 2 or self.blue_n < 2:
            raise ValueError("targets need at least two vertices")
        if self.max_rounds < 1:
            raise ValueError("round budget must be positive")
        if self.blue_target not in (PATH, CYCLE):
            raise ValueError("blue target is 'path' or 'cycle'")

    @property
    def vertices_allowed(self) -> int:
        return self.vertex_budget if self.vertex_budget is not None else 2 * self.max_rounds


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _has_cycle_of_length(edges: EdgeSet, n: int) -> bool:
    adj = adjacency(edges)

    def walk(start: int, v: int, visited: Set[int]) -> bool:
        if len(visited) == n:
            return start in adj.get(v, ())
        for w in adj.get(v, ()):
            if w > start and w not in visited:
                visited.add(w)
                if walk(start, w, visited):
                    return True
                visited.discard(w)
        return False

    return any(walk(s, s, {s}) for s in adj)


def _terminal(red: EdgeSet, blue: EdgeSet, cfg: SolveConfig) -> bool:
    if red and longest_path(red) >= cfg.red_k:
        return True
    if cfg.blue_target == PATH:
        return bool(blue) and longest_path(blue) >= cfg.blue_n
    return _has_cycle_of_length(blue, cfg.blue_n)


def _touched(red: EdgeSet, blue: EdgeSet) -> List[int]:
    seen: Set[int] = set()
    for u, v in itertools.chain(red, blue):
        seen.add(u)
        seen.add(v)
    return sorted(seen)


def _candidate_edges(red: EdgeSet, blue: EdgeSet, cfg: SolveConfig) -> Iterable[Edge]:
    touched = _touched(red, blue)
    selected = red | blue
    for u, v in itertools.combinations(touched, 2):
        e = _edge(u, v)
        if e not in selected:
            yield e
    base = max(touched, default=-1) + 1
    room = cfg.vertices_allowed - len(touched)
    if room >= 1:
        for u in touched:
            yield _edge(u, base)
    if room >= 2:
        yield (base, base + 1)


class Solver:
    """Transposition-table minimax over canonical colored graphs."""

    def __init__(self, cfg: SolveConfig):
        self.cfg = cfg
        # canonical key -> [max rounds known losing, min rounds known winning]
        self.table: Dict[bytes, List[int]] = {}

    def _bounds(self, key: bytes) -> List[int]:
        entry = self.table.get(key)
        if entry is None:
            entry = [0, 10 ** 9]
            self.table[key] = entry
        return entry

    def builder_wins(self, red: EdgeSet, blue: EdgeSet, rounds: int,
                     key: Optional[bytes] = None) -> bool:
        if rounds <= 0:
            return False
        if key is None:
            key = canonical_key(red, blue)
        bounds = self._bounds(key)
        if rounds <= bounds[0]:
            return False
        if rounds >= bounds[1]:
            return True
        seen_children: Set[Tuple[bytes, bytes]] = set()
        won = False
        for e in _candidate_edges(red, blue, self.cfg):
            red_child = red | {e}
            blue_child = blue | {e}
            rk = canonical_key(red_child, blue)
            bk = canonical_key(red, blue_child)
            if (rk, bk) in seen_children:
                continue
            seen_children.add((rk, bk))
            if not (_terminal(red_child, blue, self.cfg)
                    or self.builder_wins(red_child, blue, rounds - 1, rk)):
                continue
            if (_terminal(red, blue_child, self.cfg)
                    or self.builder_wins(red, blue_child, rounds - 1, bk)):
                won = True
                break
        if won:
            bounds[1] = min(bounds[1], rounds)
        else:
            bounds[0] = max(bounds[0], rounds)
        return won

    def value(self, red: EdgeSet = frozenset(), blue: EdgeSet = frozenset()
              ) -> Optional[int]:
        """Exact game value from this position, None when it exceeds the budget."""
        if _terminal(red, blue, self.cfg):
            return 0
        for r in range(1, self.cfg.max_rounds + 1):
            if self.builder_wins(red, blue, r):
                return r
        return None

    def best_move(self, red: EdgeSet, blue: EdgeSet) -> Optional[Edge]:
        """An optimal Builder edge (wins in value() rounds against any reply)."""
        val = self.value(red, blue)
        if val is None or val == 0:
            return None
        for e in _candidate_edges(red, blue, self.cfg):
            red_child = red | {e}
            blue_child = blue | {e}
            if ((_terminal(red_child, blue, self.cfg)
                 or self.builder_wins(red_child, blue, val - 1))
                    and (_terminal(red, blue_child, self.cfg)
                         or self.builder_wins(red, blue_child, val - 1))):
                return e
        raise AssertionError("a winning position must have a winning move")


def online_ramsey_number(cfg: SolveConfig) -> Optional[int]:
    """r~(P_k, P_n) (or the C_n variant) within the round budget; None means
    the value exceeds the budget."""
    return Solver(cfg).value()


def started_game_value(initial: GameState, cfg: SolveConfig) -> Optional[int]:
    """Game value from a nonempty starting host graph."""
    return Solver(cfg).value(frozenset(initial.red_edges), frozenset(initial.blue_edges))


class OptimalBuilder:
    """Arena Builder that replays solver-optimal moves on its own region.

    Keeps a local mirror of the edges it proposed (with Painter's actual
    colors, read back from the view) and maps mirror vertices to globally
    fresh ids, so several instances can run side by side on one board.
    """

    def __init__(self, cfg: SolveConfig):
        self.cfg = cfg
        self.solver = Solver(cfg)
        self.red: FrozenSet[Edge] = frozenset()
        self.blue: FrozenSet[Edge] = frozenset()
        self.to_global: Dict[int, int] = {}
        self.pending: Optional[Tuple[Edge, Tuple[int, int]]] = None

    def _sync(self, view) -> None:
        if self.pending is None:
            return
        local, global_edge = self.pending
        color = view.edge_color(*global_edge)
        if color is None:
            return
        if color == "red":
            self.red = self.red | {local}
        else:
            self.blue = self.blue | {local}
        self.pending = None

    def done(self, view) -> bool:
        self._sync(view)
        return _terminal(self.red, self.blue, self.cfg)

    def propose(self, view) -> Optional[Tuple[int, int]]:
        self._sync(view)
        if _terminal(self.red, self.blue, self.cfg):
            return None
        move = self.solver.best_move(self.red, self.blue)
        if move is None:
            return None
        fresh = iter(view.fresh(2))
        out = []
        for x in move:
            if x not in self.to_global:
                self.to_global[x] = next(fresh)
            out.append(self.to_global[x])
        self.pending = (move, (out[0], out[1]))
        return (out[0], out[1])


@dataclass
class Exercise3Report:
    """Outcome of the started-game inequalities at tiny scale."""

    values: Dict[str, Optional[int]]
    satisfied: Optional[bool]   # None when some solve exceeded its budget

    def __str__(self) -> str:
        parts = ", ".join(f"{k}={'budget-exceeded' if v is None else v}"
                          for k, v in self.values.items())
        return f"exercise3({parts}, satisfied={self.satisfied})"


def exercise3_check(g: int, k: int, n: int, budget: int) -> Exercise3Report:
    """Check the two removal inequalities on solvable instances:
    r~(P_g, C_n) >= r~(P_g, P_n) + 1 and
    r~(P_n, P_g) >= r~(P_k, P_g) + floor((n-1)/(k-1)) - 1.
    """
    values: Dict[str, Optional[int]] = {}
    values["cycle"] = online_ramsey_number(SolveConfig(g, n, budget, blue_target=CYCLE))
    values["path"] = online_ramsey_number(SolveConfig(g, n, budget))
    values["red_n"] = online_ramsey_number(SolveConfig(n, g, budget))
    values["red_k"] = online_ramsey_number(SolveConfig(k, g, budget))
    if any(v is None for v in values.values()):
        return Exercise3Report(values, None)
    first = values["cycle"] >= values["path"] + 1
    second = values["red_n"] >= values["red_k"] + (n - 1) // (k - 1) - 1
    return Exercise3Report(values, first and second)
