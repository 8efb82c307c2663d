"""Flow functions on the Cayley graph of a base group.

A directed edge is stored as ``EdgeKey(b, i)``, meaning ``b -> b*x_i``. The
flow of a word counts signed traversals along the path the word traces from
the identity: a letter ``x_i`` read at ``p`` adds one to ``(p, i)``, a letter
``x_i^-1`` read at ``p`` subtracts one from ``(p*x_i^-1, i)``.

Two words have the same flow over ``F/N`` exactly when they are equal in
``F/N'``, so flows double as a normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping, NamedTuple

from .errors import StructureError
from .words import Letter, Word, free_reduce


class EdgeKey(NamedTuple):
    base: Hashable
    gen: int


def canonical_key(elem) -> tuple:
    """Total-order-comparable, hashable encoding; equal keys iff equal elements."""
    if isinstance(elem, tuple):
        return elem
    return elem.key()


class Flow:
    """Finitely supported integer function on directed Cayley-graph edges.

    Immutable once built; zero entries are never stored.
    """

    __slots__ = ("group", "_values", "_hash")

    def __init__(self, group, values: Mapping[EdgeKey, int] | Iterable[tuple[EdgeKey, int]] = ()):
        self.group = group
        items = values.items() if isinstance(values, Mapping) else values
        acc: dict[EdgeKey, int] = {}
        for edge, v in items:
            edge = EdgeKey(*edge)
            total = acc.get(edge, 0) + v
            if total:
                acc[edge] = total
            else:
                acc.pop(edge, None)
        self._values = acc
        self._hash = None

    @classmethod
    def _trusted(cls, group, values: dict[EdgeKey, int]) -> "Flow":
        f = cls.__new__(cls)
        f.group = group
        f._values = values
        f._hash = None
        return f

    # mapping-ish access
    def __getitem__(self, edge) -> int:
        return self._values.get(EdgeKey(*edge), 0)

    def __len__(self) -> int:
        return len(self._values)

    def __bool__(self) -> bool:
        return bool(self._values)

    def items(self):
        return self._values.items()

    def edges(self):
        return self._values.keys()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Flow):
            return NotImplemented
        return self.group == other.group and self._values == other._values

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._values.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"({canonical_key(e.base)}, {e.gen}): {v:+d}" for e, v in self.sorted_items())
        return f"Flow({{{body}}})"

    def _check(self, other: "Flow") -> None:
        if self.group != other.group:
            raise StructureError(f"flows over {self.group} and {other.group}")

    def __add__(self, other: "Flow") -> "Flow":
        self._check(other)
        acc = dict(self._values)
        for edge, v in other._values.items():
            total = acc.get(edge, 0) + v
            if total:
                acc[edge] = total
            else:
                del acc[edge]
        return Flow._trusted(self.group, acc)

    def __neg__(self) -> "Flow":
        return Flow._trusted(self.group, {e: -v for e, v in self._values.items()})

    def __sub__(self, other: "Flow") -> "Flow":
        return self + (-other)

    def add_letter(self, position, letter: Letter) -> "Flow":
        """Flow after extending a path that currently ends at ``position`` by ``letter``."""
        if letter.sign > 0:
            edge = EdgeKey(position, letter.gen)
        else:
            edge = EdgeKey(self.group.mul_letter(position, letter), letter.gen)
        acc = dict(self._values)
        total = acc.get(edge, 0) + letter.sign
        if total:
            acc[edge] = total
        else:
            del acc[edge]
        return Flow._trusted(self.group, acc)

    def translate(self, g) -> "Flow":
        """Left translation: the edge ``(b, i)`` moves to ``(g*b, i)``."""
        mul = self.group.mul
        return Flow._trusted(self.group, {EdgeKey(mul(g, e.base), e.gen): v for e, v in self._values.items()})

    def sorted_items(self) -> list[tuple[EdgeKey, int]]:
        return sorted(self._values.items(), key=lambda kv: (canonical_key(kv[0].base), kv[0].gen))

    def key(self) -> tuple:
        return tuple((canonical_key(e.base), e.gen, v) for e, v in self.sorted_items())

    def total_variation(self) -> int:
        """Sum of absolute flow values over the support."""
        return sum(abs(v) for v in self._values.values())

    def head(self, edge: EdgeKey):
        return self.group.mul_letter(edge.base, Letter(edge.gen, 1))

    def tails(self) -> set:
        """Initial vertices of support edges (the lamp support of the Magnus image)."""
        return {e.base for e in self._values}

    def vertices(self) -> set:
        out = set()
        for e in self._values:
            out.add(e.base)
            out.add(self.head(e))
        return out

    def divergence(self, b) -> int:
        """Outflow minus inflow at vertex ``b``."""
        out = 0
        for i in range(1, self.group.rank + 1):
            out += self._values.get(EdgeKey(b, i), 0)
            out -= self._values.get(EdgeKey(self.group.mul_letter(b, Letter(i, -1)), i), 0)
        return out

    def to_json(self) -> list[dict[str, Any]]:
        enc = self.group.encode
        return [{"base": enc(e.base), "gen": e.gen, "flow": v} for e, v in self.sorted_items()]


def flow_of_word(w: Word, group) -> Flow:
    w.check_rank(group.rank)
    acc: dict[EdgeKey, int] = {}
    p = group.identity()
    for letter in free_reduce(w):
        nxt = group.mul_letter(p, letter)
        edge = EdgeKey(p, letter.gen) if letter.sign > 0 else EdgeKey(nxt, letter.gen)
        total = acc.get(edge, 0) + letter.sign
        if total:
            acc[edge] = total
        else:
            del acc[edge]
        p = nxt
    return Flow._trusted(group, acc)


def divergence(f: Flow, b) -> int:
    return f.divergence(b)


def translate_flow(g, f: Flow) -> Flow:
    return f.translate(g)


def equal_mod_nprime(u: Word, v: Word, group) -> bool:
    """Word problem in F/N' for B = F/N given by ``group``."""
    return flow_of_word(u, group) == flow_of_word(v, group)


@dataclass
class SupportGraph:
    vertices: set
    adjacency: dict = field(repr=False)
    components: list[frozenset]

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency.values()) // 2


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, a):
        self.parent.setdefault(a, a)
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def support_graph(f: Flow) -> SupportGraph:
    uf = _UnionFind()
    adjacency: dict = {}
    for e in f.edges():
        h = f.head(e)
        adjacency.setdefault(e.base, set()).add(h)
        adjacency.setdefault(h, set()).add(e.base)
        uf.union(e.base, h)
    groups: dict = {}
    for v in adjacency:
        groups.setdefault(uf.find(v), set()).add(v)
    components = sorted((frozenset(c) for c in groups.values()), key=lambda c: min(map(canonical_key, c)))
    return SupportGraph(set(adjacency), adjacency, components)
