"""The wreath product Z^r wr B and the Magnus embedding of F/N' into it.

An element is a pair ``(shadow, lamps)`` with ``shadow`` in B and ``lamps`` a
finitely supported map B -> Z^r. Multiplication is

    (b, L) * (c, M) = (b*c, L + b.M),   (b.M)(x) = M(b^-1 x),

which makes the embedding ``w -> (w-bar, b -> (d w/d x_1 [b], ..., d w/d x_r [b]))``
a homomorphism. The generators are ``t_i = (x_i, 0)`` and ``a_i = (1, e_i at 1)``;
right multiplication by ``a_i`` changes the lamp under the current position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from .errors import StructureError
from .flows import Flow, canonical_key, flow_of_word
from .fox import fox_derivatives
from .groups import evaluate
from .kernels import DEFAULT_TOUR_CAP, shortest_closed_tour, shortest_walk
from .words import Letter, Word


def _vec_add(u: tuple, v: tuple) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


class WreathElement:
    __slots__ = ("group", "shadow", "_lamps", "_hash")

    def __init__(self, group, shadow, lamps: Mapping[Any, tuple] = ()):
        self.group = group
        self.shadow = shadow
        items = lamps.items() if isinstance(lamps, Mapping) else lamps
        acc: dict = {}
        for b, v in items:
            v = tuple(v)
            if len(v) != group.rank:
                raise StructureError(f"lamp {v} does not have {group.rank} coordinates")
            total = _vec_add(acc[b], v) if b in acc else v
            if any(total):
                acc[b] = total
            else:
                acc.pop(b, None)
        self._lamps = acc
        self._hash = None

    @classmethod
    def identity(cls, group) -> "WreathElement":
        return cls(group, group.identity())

    @classmethod
    def t(cls, group, i: int, sign: int = 1) -> "WreathElement":
        return cls(group, group.mul_letter(group.identity(), Letter(i, sign)))

    @classmethod
    def a(cls, group, i: int, sign: int = 1) -> "WreathElement":
        v = [0] * group.rank
        v[i - 1] = sign
        return cls(group, group.identity(), {group.identity(): tuple(v)})

    @property
    def lamps(self) -> dict:
        return dict(self._lamps)

    def lamp(self, b) -> tuple:
        return self._lamps.get(b, (0,) * self.group.rank)

    def support(self) -> set:
        return set(self._lamps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WreathElement):
            return NotImplemented
        return self.group == other.group and self.shadow == other.shadow and self._lamps == other._lamps

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shadow, frozenset(self._lamps.items())))
        return self._hash

    def _check(self, other: "WreathElement") -> None:
        if self.group != other.group:
            raise StructureError(f"wreath elements over {self.group} and {other.group}")

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        self._check(other)
        mul = self.group.mul
        lamps = list(self._lamps.items()) + [(mul(self.shadow, b), v) for b, v in other._lamps.items()]
        return WreathElement(self.group, mul(self.shadow, other.shadow), lamps)

    def inverse(self) -> "WreathElement":
        s = self.group.inverse(self.shadow)
        mul = self.group.mul
        return WreathElement(self.group, s, {mul(s, b): tuple(-a for a in v) for b, v in self._lamps.items()})

    def sorted_lamps(self) -> list:
        return sorted(self._lamps.items(), key=lambda kv: canonical_key(kv[0]))

    def key(self) -> tuple:
        return (canonical_key(self.shadow), tuple((canonical_key(b), v) for b, v in self.sorted_lamps()))

    def __repr__(self) -> str:
        lamps = ", ".join(f"{canonical_key(b)}: {v}" for b, v in self.sorted_lamps())
        return f"WreathElement(shadow={canonical_key(self.shadow)}, lamps={{{lamps}}})"

    def to_json(self) -> dict:
        enc = self.group.encode
        return {"shadow": enc(self.shadow), "lamps": [{"at": enc(b), "value": list(v)} for b, v in self.sorted_lamps()]}

    def neighbours(self) -> list["WreathElement"]:
        """Right multiples by every t_i^{+-1} and a_i^{+-1}."""
        out = []
        g = self.group
        for i in range(1, g.rank + 1):
            for s in (1, -1):
                out.append(WreathElement._raw(g, g.mul_letter(self.shadow, Letter(i, s)), self._lamps))
                lamps = dict(self._lamps)
                v = list(lamps.get(self.shadow, (0,) * g.rank))
                v[i - 1] += s
                if any(v):
                    lamps[self.shadow] = tuple(v)
                else:
                    del lamps[self.shadow]
                out.append(WreathElement._raw(g, self.shadow, lamps))
        return out

    @classmethod
    def _raw(cls, group, shadow, lamps: dict) -> "WreathElement":
        e = cls.__new__(cls)
        e.group, e.shadow, e._lamps, e._hash = group, shadow, lamps, None
        return e


def wreath_multiply(e: WreathElement, f: WreathElement) -> WreathElement:
    return e * f


def wreath_inverse(e: WreathElement) -> WreathElement:
    return e.inverse()


def magnus_embed(w: Word, group) -> WreathElement:
    """Image of ``w`` in Z^r wr B: lamp at b collects the b-coefficients of all Fox derivatives."""
    derivs = fox_derivatives(w, group)
    lamps: dict = {}
    for i, d in enumerate(derivs):
        for b, c in d.items():
            v = lamps.setdefault(b, [0] * group.rank)
            v[i] = c
    return WreathElement(group, evaluate(w, group), {b: tuple(v) for b, v in lamps.items()})


def embed_flow(f: Flow, shadow) -> WreathElement:
    """Same image, read off a flow: the lamp at b is (f(b,1), ..., f(b,r))."""
    lamps: dict = {}
    for e, v in f.items():
        vec = lamps.setdefault(e.base, [0] * f.group.rank)
        vec[e.gen - 1] = v
    return WreathElement(f.group, shadow, {b: tuple(v) for b, v in lamps.items()})


def sum_lamp_costs(e: WreathElement) -> int:
    return sum(sum(abs(a) for a in v) for v in e._lamps.values())


def wreath_length_circuit(e: WreathElement, cap: int = DEFAULT_TOUR_CAP) -> int:
    """|shadow| + lamp costs + shortest closed tour through the lamp support and the identity."""
    g = e.group
    one = g.identity()
    tour = shortest_closed_tour(e.support() | {one}, g.distance, cap=cap)
    return g.distance(one, e.shadow) + sum_lamp_costs(e) + tour.length


def wreath_length_walk(e: WreathElement, cap: int = DEFAULT_TOUR_CAP) -> int:
    """Lamp costs + shortest walk from the identity through the lamp support to the shadow."""
    g = e.group
    one = g.identity()
    walk = shortest_walk(one, e.shadow, e.support() | {one}, g.distance, cap=cap)
    return sum_lamp_costs(e) + walk.length


def lamp_flow_identity(w: Word, group) -> bool:
    """Fox-derivative lamps agree with lamps read off the flow of ``w``."""
    return magnus_embed(w, group) == embed_flow(flow_of_word(w, group), evaluate(w, group))
