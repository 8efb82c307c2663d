"""Fox derivatives projected to the integral group ring Z[B].

Derivatives are accumulated directly in Z[B] in a single left-to-right pass:
a letter ``x_i`` read at prefix image ``p`` contributes ``+p``; a letter
``x_i^-1`` contributes ``-p*x_i^-1``. The coefficient of ``b`` in
d(w)/d(x_i) is then the flow of ``w`` through the edge ``b -> b*x_i``.
"""

from __future__ import annotations

from typing import Any, Iterable, Mapping

from .errors import RankError, StructureError
from .flows import canonical_key
from .groups import evaluate
from .words import Letter, Word, free_reduce


class RingElement:
    """Finitely supported integer combination of base-group elements."""

    __slots__ = ("group", "_coeffs")

    def __init__(self, group, coeffs: Mapping | Iterable = ()):
        self.group = group
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict = {}
        for b, c in items:
            total = acc.get(b, 0) + c
            if total:
                acc[b] = total
            else:
                acc.pop(b, None)
        self._coeffs = acc

    @classmethod
    def unit(cls, group, b=None, coeff: int = 1) -> "RingElement":
        return cls(group, {group.identity() if b is None else b: coeff})

    def __getitem__(self, b) -> int:
        return self._coeffs.get(b, 0)

    def items(self):
        return self._coeffs.items()

    def support(self) -> set:
        return set(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.group == other.group and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{canonical_key(b)}: {c:+d}" for b, c in self.sorted_items())
        return f"RingElement({{{body}}})"

    def _check(self, other: "RingElement") -> None:
        if self.group != other.group:
            raise StructureError(f"ring elements over {self.group} and {other.group}")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.group, list(self._coeffs.items()) + list(other._coeffs.items()))

    def __neg__(self) -> "RingElement":
        return RingElement(self.group, {b: -c for b, c in self._coeffs.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        mul = self.group.mul
        return RingElement(
            self.group,
            [(mul(a, b), c * d) for a, c in self._coeffs.items() for b, d in other._coeffs.items()],
        )

    def translate(self, g) -> "RingElement":
        """Left multiplication by the group element ``g``."""
        mul = self.group.mul
        return RingElement(self.group, {mul(g, b): c for b, c in self._coeffs.items()})

    def augmentation(self) -> int:
        return sum(self._coeffs.values())

    def l1(self) -> int:
        return sum(abs(c) for c in self._coeffs.values())

    def sorted_items(self) -> list:
        return sorted(self._coeffs.items(), key=lambda kv: canonical_key(kv[0]))

    def to_json(self) -> list[dict[str, Any]]:
        return [{"at": self.group.encode(b), "coeff": c} for b, c in self.sorted_items()]


def ring_add(p: RingElement, q: RingElement) -> RingElement:
    return p + q


def ring_translate(g, p: RingElement) -> RingElement:
    return p.translate(g)


def augmentation(p: RingElement) -> int:
    return p.augmentation()


def fox_derivatives(w: Word, group) -> list[RingElement]:
    """All r projected derivatives of ``w`` in one pass; entry ``i-1`` is d/dx_i."""
    w.check_rank(group.rank)
    acc: list[dict] = [{} for _ in range(group.rank)]
    p = group.identity()
    for letter in free_reduce(w):
        nxt = group.mul_letter(p, letter)
        at = p if letter.sign > 0 else nxt
        coeffs = acc[letter.gen - 1]
        total = coeffs.get(at, 0) + letter.sign
        if total:
            coeffs[at] = total
        else:
            del coeffs[at]
        p = nxt
    return [RingElement(group, c) for c in acc]


def fox_derivative(w: Word, i: int, group) -> RingElement:
    if not 1 <= i <= group.rank:
        raise RankError(f"generator index {i} outside rank {group.rank}")
    return fox_derivatives(w, group)[i - 1]


def fundamental_identity_check(w: Word, group) -> bool:
    """sum_i (dw/dx_i)(x_i - 1) == w - 1 in Z[B]."""
    one = group.identity()
    lhs = RingElement(group)
    for i, d in enumerate(fox_derivatives(w, group), start=1):
        xi = group.mul_letter(one, Letter(i, 1))
        lhs = lhs + d * RingElement(group, {xi: 1, one: -1})
    rhs = RingElement(group, [(evaluate(w, group), 1), (one, -1)])
    return lhs == rhs
