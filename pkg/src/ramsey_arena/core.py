"""Colored host graphs for Builder-Painter games.

The host graph is a 2-edge-colored graph on a lazily materialized infinite
vertex set.  Red components are classified into shape classes (isolated
vertex, short paths, or "big" components measured by distance to a per
component capital), and every vertex additionally carries a blue-degree
class.  These types drive both the Painter strategy tables and the potential
function.
"""

from __future__ import annotations

import enum
from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

Edge = Tuple[int, int]


class GameError(Exception):
    """Base class for rule violations."""


class DuplicateEdgeError(GameError):
    """The proposed edge was already selected."""


class SelfLoopError(GameError):
    """The proposed edge is a loop."""


class MissingCapitalError(GameError):
    """A big red component has no capital, so it cannot be classified."""


class IllegalStateError(GameError):
    """The red host graph has a cycle (classification is undefined)."""


class GameKind(enum.Enum):
    """The five supported games, named after the forbidden red path."""

    P3 = "p3"
    P5 = "p5"
    P7 = "p7"
    P8 = "p8"
    P9 = "p9"

    @property
    def red_path(self) -> int:
        """Vertex count of the forbidden red path."""
        return {"p3": 3, "p5": 5, "p7": 7, "p8": 8, "p9": 9}[self.value]

    @property
    def capital_kind(self) -> str:
        """'edge', 'vertex' or 'none' -- what a capital marker is."""
        if self is GameKind.P8:
            return "vertex"
        if self is GameKind.P3:
            return "none"
        return "edge"

    @property
    def small_path_max(self) -> int:
        """Largest red path component that lives without a capital."""
        return {"p3": 2, "p5": 1, "p7": 3, "p8": 4, "p9": 3}[self.value]

    @property
    def max_finite_distance(self) -> int:
        """Largest capital distance with a finite potential cell."""
        return {"p3": 0, "p5": 1, "p7": 2, "p8": 3, "p9": 3}[self.value]

    @classmethod
    def parse(cls, text: str) -> "GameKind":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown game {text!r}; expected one of p3,p5,p7,p8,p9")


class RedClass(enum.Enum):
    O = "O"
    I = "I"
    L0 = "L0"
    L1 = "L1"
    N0 = "N0"
    N1 = "N1"
    F0 = "F0"
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4P = "F4+"

    def __str__(self) -> str:
        return self.value


class BlueClass(enum.IntEnum):
    B0 = 0
    B1 = 1
    B2P = 2

    @classmethod
    def of_degree(cls, d: int) -> "BlueClass":
        return cls.B0 if d == 0 else cls.B1 if d == 1 else cls.B2P

    def bumped(self) -> "BlueClass":
        """Class after gaining one blue edge (2+ is absorbing)."""
        return BlueClass.B2P if self >= BlueClass.B1 else BlueClass.B1

    def __str__(self) -> str:
        return ("0", "1", "2+")[int(self)]


F_BY_DISTANCE = (RedClass.F0, RedClass.F1, RedClass.F2, RedClass.F3)


def f_class_for_distance(d: int) -> RedClass:
    return F_BY_DISTANCE[d] if d < 4 else RedClass.F4P


class VertexType(Tuple[RedClass, BlueClass]):
    """A (red shape class, blue degree class) pair."""

    __slots__ = ()

    def __new__(cls, red: RedClass, blue: BlueClass):
        return super().__new__(cls, (red, blue))

    @property
    def red(self) -> RedClass:
        return self[0]

    @property
    def blue(self) -> BlueClass:
        return self[1]

    def __str__(self) -> str:
        return f"{self.red}^{self.blue}"


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise SelfLoopError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


# ---------------------------------------------------------------------------
# Plain graph helpers, shared by states, the fast engine and the solver.
# ---------------------------------------------------------------------------


def adjacency(edges: Iterable[Edge]) -> Dict[int, Set[int]]:
    adj: Dict[int, Set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def components(adj: Dict[int, Set[int]], verts: Optional[Iterable[int]] = None) -> List[List[int]]:
    seen: Set[int] = set()
    out: List[List[int]] = []
    pool = adj.keys() if verts is None else verts
    for start in pool:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(comp)
    return out


def component_has_cycle(comp: Sequence[int], adj: Dict[int, Set[int]]) -> bool:
    edges = sum(len(adj.get(v, ())) for v in comp) // 2
    return edges >= len(comp)


def is_path_component(comp: Sequence[int], adj: Dict[int, Set[int]]) -> bool:
    if component_has_cycle(comp, adj):
        return False
    return all(len(adj.get(v, ())) <= 2 for v in comp)


def path_order(comp: Sequence[int], adj: Dict[int, Set[int]]) -> List[int]:
    """Vertices of a path component in path order (an end first)."""
    if len(comp) == 1:
        return list(comp)
    end = min(v for v in comp if len(adj.get(v, ())) == 1)
    order = [end]
    prev = None
    cur = end
    while len(order) < len(comp):
        nxt = next(w for w in adj[cur] if w != prev)
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def _bfs_farthest(adj: Dict[int, Set[int]], start: int) -> Tuple[int, int]:
    dist = {start: 0}
    queue = deque([start])
    far, fd = start, 0
    while queue:
        x = queue.popleft()
        for y in adj.get(x, ()):
            if y not in dist:
                dist[y] = dist[x] + 1
                if dist[y] > fd:
                    far, fd = y, dist[y]
                queue.append(y)
    return far, fd


def _tree_longest_path(comp: Sequence[int], adj: Dict[int, Set[int]]) -> int:
    a, _ = _bfs_farthest(adj, comp[0])
    _, d = _bfs_farthest(adj, a)
    return d + 1


def _dfs_longest_from(v: int, adj: Dict[int, Set[int]], visited: Set[int]) -> int:
    best = 1
    visited.add(v)
    for w in adj.get(v, ()):
        if w not in visited:
            best = max(best, 1 + _dfs_longest_from(w, adj, visited))
    visited.discard(v)
    return best


def longest_path(edges: Iterable[Edge], extra_vertices: Iterable[int] = ()) -> int:
    """Exact maximum vertex count over simple paths.

    Tree components use double-BFS; components with cycles fall back to
    exhaustive DFS, which is fine at the sizes this project meets.
    """
    adj = adjacency(edges)
    best = 1 if (adj or list(extra_vertices)) else 0
    for comp in components(adj):
        if component_has_cycle(comp, adj):
            for v in comp:
                best = max(best, _dfs_longest_from(v, adj, set()))
        else:
            best = max(best, _tree_longest_path(comp, adj))
    return best


def _bfs_path(adj: Dict[int, Set[int]], start: int) -> List[int]:
    parent = {start: None}
    queue = deque([start])
    last = start
    while queue:
        x = queue.popleft()
        last = x
        for y in adj.get(x, ()):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [last]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def _dfs_longest_path_from(v: int, adj: Dict[int, Set[int]], visited: Set[int]) -> List[int]:
    best = [v]
    visited.add(v)
    for w in adj.get(v, ()):
        if w not in visited:
            cand = [v] + _dfs_longest_path_from(w, adj, visited)
            if len(cand) > len(best):
                best = cand
    visited.discard(v)
    return best


def longest_path_vertices(edges: Iterable[Edge]) -> List[int]:
    """An actual longest simple path, in order; [] on an empty edge set."""
    adj = adjacency(edges)
    best: List[int] = []
    for comp in components(adj):
        if component_has_cycle(comp, adj):
            for v in comp:
                cand = _dfs_longest_path_from(v, adj, set())
                if len(cand) > len(best):
                    best = cand
        else:
            far = _bfs_path(adj, comp[0])[0]
            cand = _bfs_path(adj, far)
            if len(cand) > len(best):
                best = cand
    return best


def has_path_at_least(adj: Dict[int, Set[int]], n: int) -> bool:
    """Early-exit test for a simple path on >= n vertices."""
    if n <= 1:
        return n == 1 and bool(adj)
    for comp in components(adj):
        if len(comp) < n:
            continue
        if not component_has_cycle(comp, adj):
            if _tree_longest_path(comp, adj) >= n:
                return True
            continue
        for v in comp:
            if _dfs_reach(v, adj, {v}, 1, n):
                return True
    return False


def _dfs_reach(v: int, adj: Dict[int, Set[int]], visited: Set[int], length: int, n: int) -> bool:
    if length >= n:
        return True
    for w in adj.get(v, ()):
        if w not in visited:
            visited.add(w)
            if _dfs_reach(w, adj, visited, length + 1, n):
                return True
            visited.discard(w)
    return False


def longest_path_through_edge(adj: Dict[int, Set[int]], u: int, v: int, cap: int) -> int:
    """Longest simple path using edge uv, counted in vertices, capped at `cap`.

    Used for incremental blue-path detection: a new edge can only create a
    long path that passes through it.
    """
    best = 0
    for left in _paths_from(u, adj, {u, v}, cap):
        for right in _paths_from(v, adj, set(left) | {u, v}, cap - len(left)):
            best = max(best, len(left) + len(right) + 2)
            if best >= cap:
                return best
    return best


def _paths_from(v: int, adj: Dict[int, Set[int]], banned: Set[int], limit: int) -> Iterator[Tuple[int, ...]]:
    """All simple paths starting next to v (not counting v), up to `limit` vertices."""
    yield ()
    if limit <= 0:
        return
    for w in adj.get(v, ()):
        if w in banned:
            continue
        banned.add(w)
        for tail in _paths_from(w, adj, banned, limit - 1):
            yield (w,) + tail
        banned.discard(w)


# ---------------------------------------------------------------------------
# Game state
# ---------------------------------------------------------------------------

RED = "red"
BLUE = "blue"


class GameState:
    """Immutable snapshot of a partially played game.

    Capitals are edges (stored as sorted vertex pairs) in the P5/P7/P9
    games, vertices (ints) in the P8 game, and never occur in the P3 game.
    Treat instances as values: all mutators return new states.
    """

    __slots__ = ("game", "vertices", "red_edges", "blue_edges", "capitals",
                 "_classes", "_red_adj", "_blue_adj")

    def __init__(self, game: GameKind,
                 vertices: Iterable[int] = (),
                 red_edges: Iterable[Edge] = (),
                 blue_edges: Iterable[Edge] = (),
                 capitals: Iterable = ()):
        self.game = game
        red = frozenset(norm_edge(*e) for e in red_edges)
        blue = frozenset(norm_edge(*e) for e in blue_edges)
        overlap = red & blue
        if overlap:
            raise DuplicateEdgeError(f"edges colored twice: {sorted(overlap)}")
        verts = set(vertices)
        for u, v in red | blue:
            verts.add(u)
            verts.add(v)
        self.vertices: FrozenSet[int] = frozenset(verts)
        self.red_edges: FrozenSet[Edge] = red
        self.blue_edges: FrozenSet[Edge] = blue
        if game.capital_kind == "edge":
            caps = frozenset(norm_edge(*c) for c in capitals)
            for c in caps:
                if c not in red:
                    raise GameError(f"capital edge {c} is not a red edge")
        elif game.capital_kind == "vertex":
            caps = frozenset(int(c) for c in capitals)
            for c in caps:
                if c not in self.vertices:
                    raise GameError(f"capital vertex {c} is unknown")
        else:
            caps = frozenset(capitals)
            if caps:
                raise GameError(f"{game.value} game has no capitals")
        self.capitals = caps
        self._classes = None
        self._red_adj = None
        self._blue_adj = None

    @classmethod
    def empty(cls, game: GameKind) -> "GameState":
        return cls(game)

    # -- basic accessors ----------------------------------------------------

    def red_adjacency(self) -> Dict[int, Set[int]]:
        if self._red_adj is None:
            self._red_adj = adjacency(self.red_edges)
        return self._red_adj

    def blue_adjacency(self) -> Dict[int, Set[int]]:
        if self._blue_adj is None:
            self._blue_adj = adjacency(self.blue_edges)
        return self._blue_adj

    def blue_degree(self, v: int) -> int:
        return len(self.blue_adjacency().get(v, ()))

    def red_neighbors(self, v: int) -> Set[int]:
        return self.red_adjacency().get(v, set())

    def has_edge(self, u: int, v: int) -> bool:
        e = norm_edge(u, v)
        return e in self.red_edges or e in self.blue_edges

    def edge_color(self, u: int, v: int) -> Optional[str]:
        e = norm_edge(u, v)
        if e in self.red_edges:
            return RED
        if e in self.blue_edges:
            return BLUE
        return None

    def fresh(self, count: int = 1) -> Tuple[int, ...]:
        """Identifiers for vertices not yet on the board."""
        base = max(self.vertices, default=-1) + 1
        return tuple(range(base, base + count))

    def touched(self) -> List[int]:
        """Vertices incident to at least one edge."""
        seen = set(self.red_adjacency()) | set(self.blue_adjacency())
        return sorted(seen)

    # -- transitions ---------------------------------------------------------

    def add_edge(self, u: int, v: int, color: str) -> "GameState":
        e = norm_edge(u, v)
        if e in self.red_edges or e in self.blue_edges:
            raise DuplicateEdgeError(f"edge {e} was already selected")
        if color == RED:
            return GameState(self.game, self.vertices, self.red_edges | {e},
                             self.blue_edges, self.capitals)
        if color == BLUE:
            return GameState(self.game, self.vertices, self.red_edges,
                             self.blue_edges | {e}, self.capitals)
        raise ValueError(f"unknown color {color!r}")

    def add_capital(self, capital) -> "GameState":
        if self.game.capital_kind == "edge":
            capital = norm_edge(*capital)
        return GameState(self.game, self.vertices, self.red_edges,
                         self.blue_edges, self.capitals | {capital})

    def with_vertices(self, extra: Iterable[int]) -> "GameState":
        return GameState(self.game, self.vertices | set(extra), self.red_edges,
                         self.blue_edges, self.capitals)

    # -- classification ------------------------------------------------------

    def capital_in_component(self, comp_set: Set[int]):
        found = []
        for cap in self.capitals:
            anchor = cap[0] if self.game.capital_kind == "edge" else cap
            if anchor in comp_set:
                found.append(cap)
        if len(found) > 1:
            raise GameError(f"component holds several capitals: {found}")
        return found[0] if found else None

    def classify(self) -> Dict[int, VertexType]:
        """Total vertex typing; see module docstring for the class system.

        Raises IllegalStateError on red cycles and MissingCapitalError when a
        big component has no capital.
        """
        if self._classes is not None:
            return self._classes
        adj = self.red_adjacency()
        red_class: Dict[int, RedClass] = {}
        for comp in components(adj, self.vertices):
            comp_set = set(comp)
            if component_has_cycle(comp, adj):
                raise IllegalStateError("red host graph has a cycle")
            cap = self.capital_in_component(comp_set)
            if cap is None and is_path_component(comp, adj) and len(comp) <= self.game.small_path_max:
                _classify_small_path(comp, adj, red_class)
            else:
                if cap is None:
                    raise MissingCapitalError(
                        f"big red component {sorted(comp)} has no capital")
                for v, d in capital_distances(adj, comp, cap, self.game.capital_kind).items():
                    red_class[v] = f_class_for_distance(d)
        self._classes = {
            v: VertexType(red_class[v], BlueClass.of_degree(self.blue_degree(v)))
            for v in self.vertices
        }
        return self._classes

    def vertex_type(self, v: int) -> VertexType:
        if v not in self.vertices:
            return VertexType(RedClass.O, BlueClass.B0)
        return self.classify()[v]

    def longest_red_path(self) -> int:
        return longest_path(self.red_edges, self.vertices)

    def longest_blue_path(self) -> int:
        return longest_path(self.blue_edges, self.vertices)

    def has_red_cycle(self) -> bool:
        adj = self.red_adjacency()
        return any(component_has_cycle(c, adj) for c in components(adj))

    def has_blue_path_at_least(self, n: int) -> bool:
        if n <= 1:
            return n <= 0 or bool(self.vertices)
        return has_path_at_least(self.blue_adjacency(), n)

    # -- value semantics -----------------------------------------------------

    def _key(self):
        return (self.game, self.vertices, self.red_edges, self.blue_edges, self.capitals)

    def __eq__(self, other) -> bool:
        return isinstance(other, GameState) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (f"GameState({self.game.value}, red={sorted(self.red_edges)}, "
                f"blue={sorted(self.blue_edges)}, capitals={sorted(self.capitals)})")


def _classify_small_path(comp: Sequence[int], adj: Dict[int, Set[int]],
                         out: Dict[int, RedClass]) -> None:
    n = len(comp)
    if n == 1:
        out[comp[0]] = RedClass.O
    elif n == 2:
        for v in comp:
            out[v] = RedClass.I
    elif n == 3:
        for v in comp:
            out[v] = RedClass.L0 if len(adj[v]) == 2 else RedClass.L1
    elif n == 4:
        for v in comp:
            out[v] = RedClass.N0 if len(adj[v]) == 2 else RedClass.N1
    else:  # pragma: no cover - guarded by small_path_max <= 4
        raise AssertionError("small component larger than any game allows")


def capital_distances(adj: Dict[int, Set[int]], comp: Sequence[int], capital,
                      capital_kind: str) -> Dict[int, int]:
    """BFS distances to the capital; edge capitals seed both endpoints."""
    if capital_kind == "edge":
        sources = list(capital)
    else:
        sources = [capital]
    dist = {s: 0 for s in sources}
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        for y in adj.get(x, ()):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    missing = [v for v in comp if v not in dist]
    if missing:
        raise GameError(f"capital {capital} does not reach {missing}")
    return {v: dist[v] for v in comp}


def red_tree_has_eligible_capital_edge(edges: Sequence[Edge], max_distance: int = 2) -> bool:
    """Is there an edge whose distance to every vertex is <= max_distance?

    This is the capital-eligibility side of the small-tree equivalence:
    for red trees, such an edge exists iff the tree has no P7 (for
    max_distance 2) resp. no P9 (for max_distance 3).
    """
    adj = adjacency(edges)
    verts = list(adj)
    for e in edges:
        dist = capital_distances(adj, verts, norm_edge(*e), "edge")
        if max(dist.values()) <= max_distance:
            return True
    return False
