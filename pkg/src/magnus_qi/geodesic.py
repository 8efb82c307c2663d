"""Geodesics in F/N' for B = Z^r.

The length of ``w`` in F/N' is the number of edges of the multigraph Delta*:
|pi_w(e)| copies of every support edge plus two copies of every edge of a
minimal set Q joining the support components, the identity and w-bar. An
Euler trail of Delta* from the identity spells a geodesic word.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any

from .flows import EdgeKey, Flow, canonical_key, flow_of_word, support_graph
from .groups import Lattice
from .kernels import DEFAULT_FOREST_CAP, minimal_connecting_forest
from .words import Letter, Word


@dataclass(frozen=True)
class Arc:
    tail: tuple
    head: tuple
    letter: Letter


@dataclass(frozen=True)
class DeltaStar:
    group: Lattice
    vertices: frozenset
    flow_edges: tuple  # (EdgeKey, flow value), canonical order
    bridges: frozenset  # edges of Q, each doubled in Delta*
    endpoint: tuple

    @property
    def sum_flow(self) -> int:
        return sum(abs(v) for _, v in self.flow_edges)

    @property
    def edge_count(self) -> int:
        return self.sum_flow + 2 * len(self.bridges)

    def multiplicities(self) -> Counter:
        """Undirected multiedge counts keyed by EdgeKey."""
        out: Counter = Counter()
        for e, v in self.flow_edges:
            out[e] += abs(v)
        for e in self.bridges:
            out[e] += 2
        return out

    def degree(self, v) -> int:
        head = self.group.mul_letter
        d = 0
        for e, m in self.multiplicities().items():
            if e.base == v:
                d += m
            if head(e.base, Letter(e.gen, 1)) == v:
                d += m
        return d

    def arcs(self) -> list[Arc]:
        """Delta* oriented so that its arcs carry exactly the flow: support edges along sign(flow), bridges both ways."""
        head = self.group.mul_letter
        out = []
        for e, v in self.flow_edges:
            h = head(e.base, Letter(e.gen, 1))
            arc = Arc(e.base, h, Letter(e.gen, 1)) if v > 0 else Arc(h, e.base, Letter(e.gen, -1))
            out.extend([arc] * abs(v))
        for e in sorted(self.bridges, key=lambda k: (canonical_key(k.base), k.gen)):
            h = head(e.base, Letter(e.gen, 1))
            out.append(Arc(e.base, h, Letter(e.gen, 1)))
            out.append(Arc(h, e.base, Letter(e.gen, -1)))
        return out

    def to_json(self) -> dict[str, Any]:
        enc = self.group.encode
        return {
            "vertices": [enc(v) for v in sorted(self.vertices, key=canonical_key)],
            "flowEdges": [{"base": enc(e.base), "gen": e.gen, "flow": v} for e, v in self.flow_edges],
            "qEdges": [{"base": enc(e.base), "gen": e.gen} for e in sorted(self.bridges, key=lambda k: (k.base, k.gen))],
        }


def flow_endpoint(f: Flow):
    """The unique vertex with divergence -1, or the identity when the flow is closed."""
    for v in sorted(f.vertices(), key=canonical_key):
        if f.divergence(v) == -1:
            return v
    return f.group.identity()


def build_delta_star(f: Flow, cap: int = DEFAULT_FOREST_CAP) -> DeltaStar:
    group = f.group
    one = group.identity()
    if not f:
        return DeltaStar(group, frozenset(), (), frozenset(), one)
    end = flow_endpoint(f)
    graph = support_graph(f)
    forest = minimal_connecting_forest(graph.components, [one, end], cap=cap)
    vertices = set(graph.vertices) | {one, end}
    head = group.mul_letter
    for e in forest.edges:
        vertices.add(e.base)
        vertices.add(head(e.base, Letter(e.gen, 1)))
    return DeltaStar(group, frozenset(vertices), tuple(f.sorted_items()), forest.edges, end)


def geodesic_length_fn(w: Word, group: Lattice, cap: int = DEFAULT_FOREST_CAP) -> int:
    """sum_e |pi_w(e)| + 2|E(Q)|."""
    return build_delta_star(flow_of_word(w, group), cap=cap).edge_count


def euler_trail(delta: DeltaStar) -> list[Arc]:
    """Hierholzer's algorithm from the identity; at each vertex the smallest unused letter goes first."""
    start = delta.group.identity()
    out_arcs: dict = {}
    for arc in delta.arcs():
        out_arcs.setdefault(arc.tail, []).append(arc)
    for v, arcs in out_arcs.items():
        # popped from the end, so store in reverse preference order
        arcs.sort(key=lambda a: (a.letter.gen, -a.letter.sign), reverse=True)

    balance: Counter = Counter()
    for arcs in out_arcs.values():
        for a in arcs:
            balance[a.tail] += 1
            balance[a.head] -= 1
    expected = {start: 1, delta.endpoint: -1} if delta.endpoint != start else {}
    if {v: b for v, b in balance.items() if b} != expected:
        raise AssertionError("Delta* violates the degree parity needed for an Euler trail")

    stack: list[tuple[Any, Arc | None]] = [(start, None)]
    trail: list[Arc] = []
    while stack:
        v, via = stack[-1]
        if out_arcs.get(v):
            arc = out_arcs[v].pop()
            stack.append((arc.head, arc))
        else:
            stack.pop()
            if via is not None:
                trail.append(via)
    trail.reverse()
    if len(trail) != delta.edge_count:
        raise AssertionError("Delta* is not connected")
    return trail


def euler_geodesic_word(w: Word, group: Lattice, cap: int = DEFAULT_FOREST_CAP) -> Word:
    delta = build_delta_star(flow_of_word(w, group), cap=cap)
    return Word(tuple(a.letter for a in euler_trail(delta)))


def geodesic_report(w: Word, group: Lattice, cap: int = DEFAULT_FOREST_CAP) -> dict[str, Any]:
    delta = build_delta_star(flow_of_word(w, group), cap=cap)
    geo = Word(tuple(a.letter for a in euler_trail(delta)))
    return {
        "input": str(w),
        "length": delta.edge_count,
        "sumFlow": delta.sum_flow,
        "qEdges": len(delta.bridges),
        "geodesic": str(geo),
    }
