"""Canonical forms of 2-edge-colored graphs.

Color refinement on (red degree, blue degree) signatures, followed by
individualization backtracking on the first non-singleton cell; the
canonical key is the lexicographically smallest adjacency encoding over all
discrete refinements.  Isolated vertices are interchangeable, so the key
covers non-isolated vertices plus their count.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

Edge = Tuple[int, int]


def _refine(verts: Sequence[int], colors: Dict[int, int],
            radj: Dict[int, Set[int]], badj: Dict[int, Set[int]]) -> Dict[int, int]:
    while True:
        signatures = {}
        for v in verts:
            signatures[v] = (
                colors[v],
                tuple(sorted(colors[w] for w in radj.get(v, ()))),
                tuple(sorted(colors[w] for w in badj.get(v, ()))),
            )
        ranking = {sig: i for i, sig in enumerate(sorted(set(signatures.values())))}
        new = {v: ranking[signatures[v]] for v in verts}
        if new == colors:
            return new
        colors = new


def _cells(verts: Sequence[int], colors: Dict[int, int]) -> List[List[int]]:
    by_color: Dict[int, List[int]] = {}
    for v in verts:
        by_color.setdefault(colors[v], []).append(v)
    return [sorted(by_color[c]) for c in sorted(by_color)]


def _encode(order: Sequence[int], radj, badj) -> bytes:
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    out = bytearray([n])
    for i, v in enumerate(order):
        for w in order[i + 1:]:
            if w in radj.get(v, ()):
                out.append(1)
            elif w in badj.get(v, ()):
                out.append(2)
            else:
                out.append(0)
    return bytes(out)


def _search(verts: Sequence[int], colors: Dict[int, int], radj, badj,
            best: List[bytes]) -> None:
    cells = _cells(verts, colors)
    branch = next((c for c in cells if len(c) > 1), None)
    if branch is None:
        order = [c[0] for c in cells]
        enc = _encode(order, radj, badj)
        if best[0] is None or enc < best[0]:
            best[0] = enc
        return
    mark = max(colors.values()) + 1
    for v in branch:
        refined = _refine(verts, {**colors, v: mark}, radj, badj)
        _search(verts, refined, radj, badj, best)


def canonical_key(red_edges: Iterable[Edge], blue_edges: Iterable[Edge],
                  isolated: int = 0) -> bytes:
    """Isomorphism-invariant key of a colored graph.

    `isolated` counts materialized isolated vertices (all interchangeable).
    """
    radj: Dict[int, Set[int]] = {}
    badj: Dict[int, Set[int]] = {}
    for u, v in red_edges:
        radj.setdefault(u, set()).add(v)
        radj.setdefault(v, set()).add(u)
    for u, v in blue_edges:
        badj.setdefault(u, set()).add(v)
        badj.setdefault(v, set()).add(u)
    verts = sorted(set(radj) | set(badj))
    init = {v: (len(radj.get(v, ())), len(badj.get(v, ()))) for v in verts}
    ranking = {sig: i for i, sig in enumerate(sorted(set(init.values())))}
    colors = _refine(verts, {v: ranking[init[v]] for v in verts}, radj, badj)
    best: List[bytes] = [None]
    if verts:
        _search(verts, colors, radj, badj, best)
    else:
        best[0] = b"\x00"
    return bytes([isolated]) + best[0]
