"""Exact optimisation kernels on lattice point sets.

* Shortest closed tours and open walks through a point set (Held-Karp).
* Minimum number of lattice edges joining several vertex groups into one
  connected set (Dreyfus-Wagner over a Hanan grid, components contracted).

Both refuse inputs above a size cap rather than fall back to a heuristic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import CapacityError
from .flows import EdgeKey, _UnionFind, canonical_key

DEFAULT_TOUR_CAP = 18
DEFAULT_FOREST_CAP = 10

_INF = np.int64(1) << 40

Metric = Callable[[Hashable, Hashable], int]


def l1(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(abs(x - y) for x, y in zip(a, b))


@dataclass(frozen=True)
class TourResult:
    length: int
    order: tuple
    closed: bool = True

    def recomputed_length(self, metric: Metric) -> int:
        legs = list(zip(self.order, self.order[1:]))
        if self.closed and len(self.order) > 1:
            legs.append((self.order[-1], self.order[0]))
        return sum(metric(a, b) for a, b in legs)


def _paths_to(origin_d: np.ndarray, d: np.ndarray) -> np.ndarray:
    """table[S, k]: shortest path from the origin through exactly the set S, ending at k in S."""
    m = len(origin_d)
    full = 1 << m
    table = np.full((full, m), _INF, dtype=np.int64)
    for k in range(m):
        table[1 << k, k] = origin_d[k]
    masks = np.arange(full, dtype=np.int64)
    popcount = np.zeros(full, dtype=np.int64)
    for k in range(m):
        popcount += (masks >> k) & 1
    for size in range(2, m + 1):
        layer = masks[popcount == size]
        for j in range(m):
            sel = layer[((layer >> j) & 1) == 1]
            prev = sel ^ (1 << j)
            table[sel, j] = (table[prev] + d[:, j]).min(axis=1)
    return table


def _tour_through(start, end, inner: list, metric: Metric, closed: bool) -> TourResult:
    m = len(inner)
    if m == 0:
        order = (start,) if closed else (start, end)
        return TourResult(0 if closed else metric(start, end), order, closed)
    d = np.array([[metric(a, b) for b in inner] for a in inner], dtype=np.int64)
    to_end = np.array([metric(end, b) for b in inner], dtype=np.int64)
    from_start = np.array([metric(start, b) for b in inner], dtype=np.int64)
    # rooted at the end so that the lexicographically first order can be read forwards
    table = _paths_to(to_end, d)

    def cost_to_go(remaining: int, step: np.ndarray) -> tuple[int, list[int]]:
        ks = [k for k in range(m) if remaining >> k & 1]
        costs = [int(step[k] + table[remaining, k]) for k in ks]
        best = min(costs)
        return best, [k for k, c in zip(ks, costs) if c == best]

    remaining = (1 << m) - 1
    length, choices = cost_to_go(remaining, from_start)
    order = [start]
    while remaining:
        k = choices[0]
        order.append(inner[k])
        remaining ^= 1 << k
        if remaining:
            _, choices = cost_to_go(remaining, d[k])
    if not closed:
        order.append(end)
    return TourResult(length, tuple(order), closed)


def shortest_closed_tour(points: Iterable, metric: Metric = l1, cap: int = DEFAULT_TOUR_CAP) -> TourResult:
    """Shortest closed tour through ``points``; the order starts at the smallest canonical key."""
    pts = sorted(set(points), key=canonical_key)
    if len(pts) > cap:
        raise CapacityError(f"closed tour over {len(pts)} points exceeds cap {cap}")
    if not pts:
        return TourResult(0, (), True)
    return _tour_through(pts[0], pts[0], pts[1:], metric, closed=True)


def shortest_walk(start, end, points: Iterable, metric: Metric = l1, cap: int = DEFAULT_TOUR_CAP) -> TourResult:
    """Shortest walk from ``start`` to ``end`` visiting every point."""
    inner = sorted(set(points) - {start, end}, key=canonical_key)
    if len(inner) + 1 > cap:
        raise CapacityError(f"walk over {len(inner) + 1} points exceeds cap {cap}")
    return _tour_through(start, end, inner, metric, closed=False)


def brute_force_tour(points: Iterable, metric: Metric = l1) -> int:
    pts = sorted(set(points), key=canonical_key)
    if len(pts) <= 1:
        return 0
    first, rest = pts[0], pts[1:]
    best = None
    for perm in itertools.permutations(rest):
        route = (first,) + perm + (first,)
        cost = sum(metric(a, b) for a, b in zip(route, route[1:]))
        best = cost if best is None else min(best, cost)
    return best


def brute_force_walk(start, end, points: Iterable, metric: Metric = l1) -> int:
    inner = list(set(points) - {start, end})
    best = None
    for perm in itertools.permutations(inner):
        route = (start,) + perm + (end,)
        cost = sum(metric(a, b) for a, b in zip(route, route[1:]))
        best = cost if best is None else min(best, cost)
    return best


# --- Steiner forests ---------------------------------------------------------


@dataclass(frozen=True)
class ForestResult:
    edges: frozenset
    cost: int


def lattice_edge(u: tuple, v: tuple) -> EdgeKey:
    """The unit edge between neighbouring lattice points, oriented along +x_i."""
    diff = [b - a for a, b in zip(u, v)]
    i = next(k for k, t in enumerate(diff) if t)
    if abs(diff[i]) != 1 or sum(map(abs, diff)) != 1:
        raise ValueError(f"{u} and {v} are not lattice neighbours")
    return EdgeKey(u, i + 1) if diff[i] > 0 else EdgeKey(v, i + 1)


def _segment_edges(u: tuple, v: tuple) -> list[EdgeKey]:
    i = next(k for k, (a, b) in enumerate(zip(u, v)) if a != b)
    lo, hi = sorted((u, v))
    out = []
    for c in range(lo[i], hi[i]):
        p = lo[:i] + (c,) + lo[i + 1:]
        out.append(EdgeKey(p, i + 1))
    return out


def _groups(components: Sequence[Iterable], terminals: Iterable) -> list[frozenset]:
    # components sharing a vertex are already joined; treat them as one group
    uf = _UnionFind()
    raw = [frozenset(c) for c in components if c]
    for c in raw:
        first = next(iter(c))
        for p in c:
            uf.union(p, first)
    merged: dict = {}
    for c in raw:
        root = uf.find(next(iter(c)))
        merged[root] = merged.get(root, frozenset()) | c
    groups = list(merged.values())
    covered = set().union(*groups) if groups else set()
    for t in sorted(set(terminals) - covered, key=canonical_key):
        groups.append(frozenset([t]))
    return groups


def minimal_connecting_forest(
    components: Sequence[Iterable],
    terminals: Iterable = (),
    cap: int = DEFAULT_FOREST_CAP,
    grid: str = "hanan",
) -> ForestResult:
    """Fewest lattice edges Q making the components and extra terminals one connected set.

    ``grid="hanan"`` restricts Steiner points to the Hanan grid of the input
    vertices; ``grid="box"`` uses every lattice point of the bounding box
    (slower, kept as a cross-check).
    """
    groups = _groups(components, terminals)
    if len(groups) > cap:
        raise CapacityError(f"{len(groups)} groups exceed forest cap {cap}")
    if len(groups) <= 1:
        return ForestResult(frozenset(), 0)

    points = set().union(*groups)
    dim = len(next(iter(points)))
    if grid == "hanan":
        axes = [sorted({p[k] for p in points}) for k in range(dim)]
    elif grid == "box":
        axes = [list(range(min(p[k] for p in points), max(p[k] for p in points) + 1)) for k in range(dim)]
    else:
        raise ValueError(f"unknown grid {grid!r}")

    nodes = list(itertools.product(*axes))
    position = [{c: i for i, c in enumerate(axis)} for axis in axes]
    owner = {}
    for gi, g in enumerate(groups):
        for p in g:
            owner[p] = gi
    # contract every group into one node; free grid points keep their own
    index: dict[tuple, int] = {}
    n_groups = len(groups)
    node_id = []
    for p in nodes:
        if p in owner:
            node_id.append(owner[p])
        else:
            index[p] = n_groups + len(index)
            node_id.append(index[p])
    where = {p: nid for p, nid in zip(nodes, node_id)}
    n = n_groups + len(index)

    seg: dict[tuple[int, int], tuple[tuple, tuple]] = {}
    weight: dict[tuple[int, int], int] = {}
    for p in nodes:
        for k in range(dim):
            pos = position[k][p[k]]
            if pos + 1 >= len(axes[k]):
                continue
            q = p[:k] + (axes[k][pos + 1],) + p[k + 1:]
            a, b = where[p], where[q]
            if a == b:
                continue
            w = q[k] - p[k]
            pair = (min(a, b), max(a, b))
            if pair not in weight or w < weight[pair] or (w == weight[pair] and (p, q) < seg[pair]):
                weight[pair] = w
                seg[pair] = (p, q)
    rows = [a for a, b in weight] + [b for a, b in weight]
    cols = [b for a, b in weight] + [a for a, b in weight]
    vals = list(weight.values()) * 2
    graph = coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    dist_f, pred = shortest_path(graph, method="D", directed=False, return_predecessors=True)
    if not np.isfinite(dist_f[:n_groups, :n_groups]).all():
        raise RuntimeError("grid graph is disconnected")
    dist = dist_f.astype(np.int64)

    k = n_groups
    full = (1 << k) - 1
    dp = np.full((full + 1, n), _INF, dtype=np.int64)
    came_from = np.full((full + 1, n), -1, dtype=np.int64)
    split = np.zeros((full + 1, n), dtype=np.int64)
    for t in range(k):
        dp[1 << t] = dist[t]
        came_from[1 << t] = t
    for S in range(1, full + 1):
        if S & (S - 1) == 0:
            continue
        merged = np.full(n, _INF, dtype=np.int64)
        best_split = np.zeros(n, dtype=np.int64)
        low = S & -S
        A = (S - 1) & S
        while A:
            if A & low:
                cand = dp[A] + dp[S ^ A]
                better = cand < merged
                merged = np.where(better, cand, merged)
                best_split = np.where(better, A, best_split)
            A = (A - 1) & S
        total = merged[:, None] + dist
        came_from[S] = total.argmin(axis=0)
        dp[S] = total.min(axis=0)
        split[S] = best_split

    edges: set[EdgeKey] = set()

    def add_path(u: int, v: int) -> None:
        while v != u:
            p = pred[u, v]
            for e in _segment_edges(*seg[(min(p, v), max(p, v))]):
                edges.add(e)
            v = p

    def rebuild(S: int, v: int) -> None:
        u = int(came_from[S, v])
        add_path(u, v)
        if S & (S - 1) == 0:
            return
        A = int(split[S, u])
        rebuild(A, u)
        rebuild(S ^ A, u)

    rebuild(full, 0)
    cost = int(dp[full, 0])
    if len(edges) != cost:
        raise AssertionError(f"reconstructed {len(edges)} edges for optimum {cost}")
    return ForestResult(frozenset(edges), cost)


def connects(components: Sequence[Iterable], terminals: Iterable, edges: Iterable[EdgeKey]) -> bool:
    """Whether the groups plus ``edges`` form one connected set (group members count as joined)."""
    groups = _groups(components, terminals)
    if not groups:
        return True
    uf = _UnionFind()
    for g in groups:
        first = next(iter(g))
        for p in g:
            uf.union(first, p)
    for e in edges:
        head = e.base[: e.gen - 1] + (e.base[e.gen - 1] + 1,) + e.base[e.gen:]
        uf.union(e.base, head)
    roots = {uf.find(next(iter(g))) for g in groups}
    return len(roots) == 1


def brute_force_forest(components: Sequence[Iterable], terminals: Iterable = (), max_cost: int = 4) -> int | None:
    """Smallest edge count joining the groups, by exhaustive search over edge sets.

    Edge sets are grown one edge at a time, each new edge touching a vertex
    already reached; every connecting set can be built this way. Returns None
    when nothing of size <= ``max_cost`` connects.
    """
    groups = _groups(components, terminals)
    if len(groups) <= 1:
        return 0
    base_vertices = frozenset().union(*groups)
    dim = len(next(iter(base_vertices)))

    def touching(vertices):
        for p in vertices:
            for k in range(dim):
                yield EdgeKey(p, k + 1)
                yield EdgeKey(p[:k] + (p[k] - 1,) + p[k + 1:], k + 1)

    def head(e):
        return e.base[: e.gen - 1] + (e.base[e.gen - 1] + 1,) + e.base[e.gen:]

    level = {frozenset()}
    for size in range(1, max_cost + 1):
        nxt = set()
        for chosen in level:
            vertices = base_vertices.union(*((e.base, head(e)) for e in chosen))
            for e in touching(vertices):
                if e in chosen:
                    continue
                grown = chosen | {e}
                if grown in nxt:
                    continue
                if connects(components, terminals, grown):
                    return size
                nxt.add(grown)
        level = nxt
    return None
