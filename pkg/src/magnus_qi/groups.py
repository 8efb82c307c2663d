"""Base groups: the lattice Z^r and the free solvable tower S_{d,r}.

Every base group offers the same small surface (``identity``, ``mul_letter``,
``mul``, ``inverse``, ``key``, ``distance``, ``encode``, ``decode``), which is
all that flows, Fox derivatives and the wreath product need. Elements are
immutable and hashable; lattice points are plain tuples of ints.

S_{1,r} is Z^r. For d >= 2 an element of S_{d,r} is its image in S_{d-1,r}
together with the flow its words trace on the Cayley graph of S_{d-1,r}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Protocol

from .errors import RadiusExceeded, RankError
from .flows import EdgeKey, Flow, canonical_key, flow_of_word
from .search import bidirectional_distance
from .words import Letter, Word

LatticePoint = tuple[int, ...]


@dataclass(frozen=True)
class Config:
    rank: int
    degree: int = 2

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")


class BaseGroup(Protocol):
    rank: int

    def identity(self) -> Hashable: ...
    def mul_letter(self, g, letter: Letter): ...
    def mul(self, g, h): ...
    def inverse(self, g): ...
    def key(self, g) -> tuple: ...
    def distance(self, g, h) -> int: ...
    def encode(self, g) -> Any: ...


def _letters(rank: int) -> list[Letter]:
    return [Letter(i, s) for i in range(1, rank + 1) for s in (1, -1)]


@dataclass(frozen=True)
class Lattice:
    """Z^r with the standard basis as generators; the word metric is L1."""

    rank: int

    def identity(self) -> LatticePoint:
        return (0,) * self.rank

    def mul_letter(self, g: LatticePoint, letter: Letter) -> LatticePoint:
        if not 1 <= letter.gen <= self.rank:
            raise RankError(f"generator x{letter.gen} outside rank {self.rank}")
        i = letter.gen - 1
        return g[:i] + (g[i] + letter.sign,) + g[i + 1:]

    def mul(self, g: LatticePoint, h: LatticePoint) -> LatticePoint:
        return tuple(a + b for a, b in zip(g, h))

    def inverse(self, g: LatticePoint) -> LatticePoint:
        return tuple(-a for a in g)

    def key(self, g: LatticePoint) -> tuple:
        return g

    def norm(self, g: LatticePoint) -> int:
        return sum(abs(a) for a in g)

    def distance(self, g: LatticePoint, h: LatticePoint) -> int:
        return sum(abs(a - b) for a, b in zip(g, h))

    def encode(self, g: LatticePoint) -> list[int]:
        return list(g)

    def decode(self, data) -> LatticePoint:
        point = tuple(int(a) for a in data)
        if len(point) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(point)}")
        return point

    def generators(self) -> list[Letter]:
        return _letters(self.rank)


@dataclass(frozen=True)
class SolvableElement:
    shadow: Any
    flow: Flow

    def key(self) -> tuple:
        return (canonical_key(self.shadow), self.flow.key())


@dataclass(frozen=True)
class FreeSolvable:
    """S_{d,r} for d >= 2, realised over the Cayley graph of S_{d-1,r}.

    ``distance`` is a bounded breadth-first search: exact when it answers,
    :class:`RadiusExceeded` otherwise.
    """

    rank: int
    degree: int
    oracle_radius: int = field(default=8, compare=False)

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError("use Lattice for degree 1")

    @property
    def base(self):
        return free_solvable(self.rank, self.degree - 1)

    def identity(self) -> SolvableElement:
        return SolvableElement(self.base.identity(), Flow(self.base))

    def mul_letter(self, g: SolvableElement, letter: Letter) -> SolvableElement:
        if not 1 <= letter.gen <= self.rank:
            raise RankError(f"generator x{letter.gen} outside rank {self.rank}")
        return SolvableElement(self.base.mul_letter(g.shadow, letter), g.flow.add_letter(g.shadow, letter))

    def mul(self, g: SolvableElement, h: SolvableElement) -> SolvableElement:
        return SolvableElement(self.base.mul(g.shadow, h.shadow), g.flow + h.flow.translate(g.shadow))

    def inverse(self, g: SolvableElement) -> SolvableElement:
        s = self.base.inverse(g.shadow)
        return SolvableElement(s, -g.flow.translate(s))

    def key(self, g: SolvableElement) -> tuple:
        return g.key()

    def distance(self, g, h, radius: int | None = None) -> int:
        radius = self.oracle_radius if radius is None else radius
        d = bidirectional_distance(g, h, self.neighbours, radius)
        if d is None:
            raise RadiusExceeded(f"distance exceeds search radius {radius}")
        return d

    def neighbours(self, g):
        return [self.mul_letter(g, l) for l in _letters(self.rank)]

    def encode(self, g: SolvableElement) -> dict:
        return {"shadow": self.base.encode(g.shadow), "flow": g.flow.to_json()}

    def decode(self, data) -> SolvableElement:
        base = self.base
        flow = Flow(base, ((EdgeKey(base.decode(e["base"]), int(e["gen"])), int(e["flow"])) for e in data["flow"]))
        return SolvableElement(base.decode(data["shadow"]), flow)

    def generators(self) -> list[Letter]:
        return _letters(self.rank)


def free_solvable(rank: int, degree: int):
    """S_{degree,rank}; degree 1 gives the lattice."""
    if degree == 1:
        return Lattice(rank)
    return FreeSolvable(rank, degree)


def evaluate(w: Word, group):
    """Image of ``w`` in ``group`` under x_i -> x_i."""
    w.check_rank(group.rank)
    g = group.identity()
    for letter in w:
        g = group.mul_letter(g, letter)
    return g


def solvable_from_word(w: Word, cfg: Config):
    """Normal form of ``w`` in S_{d,r}, built level by level."""
    w.check_rank(cfg.rank)
    if cfg.degree == 1:
        return evaluate(w, Lattice(cfg.rank))
    shadow = solvable_from_word(w, Config(cfg.rank, cfg.degree - 1))
    return SolvableElement(shadow, flow_of_word(w, free_solvable(cfg.rank, cfg.degree - 1)))
