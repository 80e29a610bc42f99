"""Builder strategies.

The path-merging Builder realizes the two-paths lemma: embed a bipartite H
between prefixes of two disjoint blue paths; an all-red reply completes a
red H, any blue reply closes a long blue path.  On top of it sits the
block-and-merge Builder of the corollary bound.  Greedy and seeded-random
Builders provide adversarial load for Painter audits.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .core import (BLUE, RED, GameState, adjacency, longest_path_vertices)


@dataclass(frozen=True)
class BipartitionPlan:
    """An embedding of a bipartite target H into K_{a,b}.

    `edges` lists H's edges as (left index, right index) pairs; left indices
    run over 0..a-1, right over 0..b-1, and a+b = v(H).
    """

    name: str
    a: int
    b: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("both sides of the bipartition must be nonempty")
        for i, j in self.edges:
            if not (0 <= i < self.a and 0 <= j < self.b):
                raise ValueError(f"edge ({i},{j}) leaves the bipartition")
        covered = {(0, i) for i, _ in self.edges} | {(1, j) for _, j in self.edges}
        if len(covered) != self.a + self.b:
            raise ValueError("the embedding must touch every vertex of H")

    @property
    def order(self) -> int:
        return self.a + self.b

    @property
    def size(self) -> int:
        return len(self.edges)


_PLANS = {
    "P3": BipartitionPlan("P3", 1, 2, ((0, 0), (0, 1))),
    "P4": BipartitionPlan("P4", 2, 2, ((0, 0), (1, 0), (1, 1))),
    "C4": BipartitionPlan("C4", 2, 2, ((0, 0), (0, 1), (1, 0), (1, 1))),
}


def plan_for(name: str) -> BipartitionPlan:
    try:
        return _PLANS[name.upper()]
    except KeyError:
        raise ValueError(f"no builtin bipartition plan for {name!r}")


def _oriented(path: Sequence[int]) -> List[int]:
    """Designated endpoint (the smaller vertex id end) first."""
    path = list(path)
    return path if path[0] <= path[-1] else path[::-1]


class MergePathsBuilder:
    """Emit the merge edges between two blue paths, per the plan's order.

    Stops as soon as Painter colors one of its edges blue (the long blue
    path exists) or the embedding is exhausted (the red H is complete).
    """

    def __init__(self, plan: BipartitionPlan, path_a: Sequence[int], path_b: Sequence[int]):
        if len(path_a) <= plan.order or len(path_b) <= plan.order:
            raise ValueError("both paths must be longer than v(H)")
        if set(path_a) & set(path_b):
            raise ValueError("paths must be vertex-disjoint")
        self.plan = plan
        self.path_a = _oriented(path_a)
        self.path_b = _oriented(path_b)
        self.sequence = [(self.path_a[i], self.path_b[j]) for i, j in plan.edges]
        self.played: List[Tuple[int, int]] = []

    def blue_reply(self, view) -> Optional[Tuple[int, int]]:
        for e in self.played:
            if view.edge_color(*e) == BLUE:
                return e
        return None

    def merged_path(self, blue_edge: Tuple[int, int]) -> List[int]:
        """The long blue path closed by the Painter's blue reply."""
        x, y = blue_edge
        if x in self.path_b:
            x, y = y, x
        i = self.path_a.index(x)
        j = self.path_b.index(y)
        return list(reversed(self.path_a[i:])) + self.path_b[j:]

    def propose(self, view) -> Optional[Tuple[int, int]]:
        if self.blue_reply(view) is not None:
            return None
        if len(self.played) == len(self.sequence):
            return None
        edge = self.sequence[len(self.played)]
        self.played.append(edge)
        return edge


def merge_paths_sequence(state: GameState, plan: BipartitionPlan,
                         path_a: Sequence[int], path_b: Sequence[int]):
    """The lemma's edge sequence for an existing state (see MergePathsBuilder).

    Validates that the paths are blue in `state` before yielding edges.
    """
    blue = state.blue_adjacency()
    for path in (path_a, path_b):
        for p, q in zip(path, path[1:]):
            if q not in blue.get(p, ()):
                raise ValueError(f"{p}-{q} is not a blue edge")
    return MergePathsBuilder(plan, path_a, path_b)


class CorollaryBuilder:
    """Force ceil(m/(n-v(H))) disjoint blue P_n blocks, then merge them.

    `subgame_factory()` must yield a builder that forces red H or a blue
    P_n on fresh vertices; merges use MergePathsBuilder.  The total number
    of rounds never exceeds blocks * (subgame rounds + e(H)).
    """

    def __init__(self, plan: BipartitionPlan, n: int, m: int, subgame_factory):
        if n <= plan.order:
            raise ValueError("block size n must exceed v(H)")
        self.plan = plan
        self.n = n
        self.m = m
        self.blocks = max(1, math.ceil(m / (n - plan.order)))
        self.subgame_factory = subgame_factory
        self.block_builder = None
        self.block_edges: List[Tuple[int, int]] = []
        self.paths: List[List[int]] = []
        self.merger: Optional[MergePathsBuilder] = None

    def _block_blue_path(self, view) -> Optional[List[int]]:
        blue = [e for e in self.block_edges if view.edge_color(*e) == BLUE]
        path = longest_path_vertices(blue)
        return path if len(path) >= self.n else None

    def propose(self, view) -> Optional[Tuple[int, int]]:
        # Phase 2: merging
        if self.merger is not None:
            reply = self.merger.blue_reply(view)
            if reply is not None:
                self.paths.append(self.merger.merged_path(reply))
                self.merger = None
            else:
                edge = self.merger.propose(view)
                if edge is not None:
                    return edge
                self.merger = None  # all red: H complete, arena will stop
        if len(self.paths) < self.blocks and self.merger is None and self.block_builder is None:
            self.block_builder = self.subgame_factory()
            self.block_edges = []
        # Phase 1: build blocks
        if self.block_builder is not None:
            done = self._block_blue_path(view)
            if done is not None:
                self.paths.append(done)
                self.block_builder = None
            else:
                edge = self.block_builder.propose(view)
                if edge is None:  # subgame claims red H; let the arena verify
                    self.block_builder = None
                    return self.propose(view)
                self.block_edges.append(edge)
                return edge
            if len(self.paths) < self.blocks:
                self.block_builder = self.subgame_factory()
                self.block_edges = []
                return self.propose(view)
        # Start the next merge
        if len(self.paths) >= 2:
            self.paths.sort(key=len)
            b = self.paths.pop()
            a = self.paths.pop()
            self.merger = MergePathsBuilder(self.plan, a, b)
            return self.propose(view)
        return None


# ---------------------------------------------------------------------------
# Heuristic builders
# ---------------------------------------------------------------------------


def greedy_blue_builder(state: GameState) -> Tuple[int, int]:
    """One greedy proposal: extend the longest blue path from a free
    endpoint, else threaten a red-path extension, else open fresh ground."""
    blue_path = longest_path_vertices(state.blue_edges)
    if len(blue_path) >= 2:
        end = blue_path[-1] if blue_path[-1] >= blue_path[0] else blue_path[0]
        return (end, state.fresh(1)[0])
    red_path = longest_path_vertices(state.red_edges)
    if red_path:
        return (red_path[-1], state.fresh(1)[0])
    f1, f2 = state.fresh(2)
    return (f1, f2)


class GreedyBlueBuilder:
    """Stateful greedy Builder that keeps one blue path growing.

    It probes each new path endpoint against a fresh vertex once (the cheap
    extension), and otherwise grows side components to the game's joinable
    stage -- a red P3 for the main games, a red edge for the exercise games
    -- whose free end it then ties to the path end; the strategies' shared
    blue case for joined shapes makes that tie blue, so the path grows by
    one hub every few moves against every builtin Painter.
    """

    def __init__(self, game):
        self.stage = 1 if game.small_path_max <= 2 else 2
        self.path: List[int] = []
        self.ready: List[int] = []          # join vertices of completed comps
        self.building: Optional[Dict] = None
        self.probed_end: Optional[int] = None
        self.pending: Optional[Tuple[Tuple[int, int], str]] = None

    def _sync(self, view) -> None:
        if self.pending is None:
            return
        (u, v), intent = self.pending
        color = view.edge_color(u, v)
        if color is None:
            return
        self.pending = None
        if intent == "probe":
            if color == BLUE:
                self.path.append(v)
                self.probed_end = None
            else:
                self.probed_end = u
        elif intent == "build":
            if color == RED:
                comp = self.building
                comp["verts"].append(v)
                comp["far"] = v
                if len(comp["verts"]) == self.stage + 1:
                    self.ready.append(comp["far"])
                    self.building = None
            else:
                if not self.path:
                    self.path = [u, v]
                    self.probed_end = None
                self.building = None
        elif intent == "join":
            if color == BLUE:
                self.path.append(v)
                self.probed_end = None
            # on red the component merged into the end's; it is spent
        elif intent == "seed":
            if color == BLUE:
                self.path = [u, v]
                self.probed_end = None

    def propose(self, view) -> Optional[Tuple[int, int]]:
        self._sync(view)
        if self.ready and self.path:
            join = self.ready.pop(0)
            edge = (self.path[-1], join)
            self.pending = (edge, "join")
            return edge
        if len(self.ready) >= 2 and not self.path:
            a, b = self.ready.pop(0), self.ready.pop(0)
            self.pending = ((a, b), "seed")
            return (a, b)
        if self.path and self.probed_end != self.path[-1] and self.building is None:
            edge = (self.path[-1], view.fresh(1)[0])
            self.pending = (edge, "probe")
            return edge
        if self.building is not None:
            edge = (self.building["far"], view.fresh(1)[0])
            self.pending = (edge, "build")
            return edge
        f1, f2 = view.fresh(2)
        self.building = {"verts": [f1], "far": f1}
        self.pending = ((f1, f2), "build")
        return (f1, f2)


def random_builder(state: GameState, seed: int) -> Tuple[int, int]:
    """Uniform choice among unselected pairs over touched plus two fresh
    vertices; deterministic per (state, seed)."""
    rng = random.Random(seed)
    pool = state.touched() + list(state.fresh(2))
    pairs = [(pool[i], pool[j])
             for i in range(len(pool)) for j in range(i + 1, len(pool))
             if not state.has_edge(pool[i], pool[j])]
    return pairs[rng.randrange(len(pairs))]


class RandomBuilder:
    """Seeded uniform sampler over unselected pairs, by rejection."""

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def propose(self, view) -> Tuple[int, int]:
        pool = list(view.touched()) + list(view.fresh(2))
        n = len(pool)
        while True:
            i = self.rng.randrange(n)
            j = self.rng.randrange(n)
            if i == j:
                continue
            u, v = pool[i], pool[j]
            if not view.has_edge(u, v):
                return (u, v)
