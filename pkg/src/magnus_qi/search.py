"""Bounded breadth-first search on Cayley graphs, deduplicated by hashable element."""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, TypeVar

E = TypeVar("E", bound=Hashable)

Neighbours = Callable[[E], Iterable[E]]


def bfs_ball(identity: E, neighbours: Neighbours, radius: int) -> dict[E, int]:
    """Every element within ``radius`` of ``identity``, mapped to its distance."""
    depth = {identity: 0}
    frontier = [identity]
    for level in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for h in neighbours(g):
                if h not in depth:
                    depth[h] = level
                    nxt.append(h)
        frontier = nxt
        if not frontier:
            break
    return depth


def bidirectional_distance(source: E, target: E, neighbours: Neighbours, radius: int) -> int | None:
    """Exact graph distance between two vertices of an undirected graph, or None beyond ``radius``.

    Grows whole levels alternately from the smaller frontier. The first level
    at which the two searches touch fixes the distance: every meeting found
    then lies on a shortest path.
    """
    if source == target:
        return 0
    seen = ({source: 0}, {target: 0})
    frontiers = ([source], [target])
    radii = [0, 0]
    while radii[0] + radii[1] < radius:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = seen[side], seen[1 - side]
        radii[side] += 1
        best = None
        nxt = []
        for g in frontiers[side]:
            for h in neighbours(g):
                if h in mine:
                    continue
                mine[h] = radii[side]
                nxt.append(h)
                if h in other:
                    total = radii[side] + other[h]
                    if best is None or total < best:
                        best = total
        if best is not None:
            return best
        if not nxt:
            return None
        frontiers = (nxt, frontiers[1]) if side == 0 else (frontiers[0], nxt)
    return None
