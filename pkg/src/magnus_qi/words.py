"""Free-group words over generators x1..xr.

Text syntax: whitespace-separated tokens ``x<k>`` or ``x<k>^-1``; the empty
string is the identity.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import RankError, WordSyntaxError

_TOKEN = re.compile(r"x([1-9][0-9]*)(\^-1)?")


class Letter(NamedTuple):
    gen: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)

    def __str__(self) -> str:
        return f"x{self.gen}" if self.sign > 0 else f"x{self.gen}^-1"


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for letter in self.letters:
            if letter.sign not in (1, -1) or letter.gen < 1:
                raise ValueError(f"malformed letter {letter!r}")

    @classmethod
    def of(cls, letters: Iterable) -> "Word":
        return cls(tuple(Letter(*l) for l in letters))

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "Word":
        letters = []
        for pos, token in enumerate(text.split()):
            m = _TOKEN.fullmatch(token)
            if m is None:
                raise WordSyntaxError("cannot parse token", pos, token)
            gen = int(m.group(1))
            if rank is not None and gen > rank:
                raise WordSyntaxError(f"unknown generator for rank {rank}", pos, token)
            letters.append(Letter(gen, -1 if m.group(2) else 1))
        return cls(tuple(letters))

    def __str__(self) -> str:
        return " ".join(str(l) for l in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.letters * n)

    def inverse(self) -> "Word":
        return Word(tuple(l.inverse() for l in reversed(self.letters)))

    def max_gen(self) -> int:
        return max((l.gen for l in self.letters), default=0)

    def check_rank(self, rank: int) -> None:
        if self.max_gen() > rank:
            raise RankError(f"word {self} uses a generator beyond rank {rank}")

    def reduced(self) -> "Word":
        return free_reduce(self)

    def is_reduced(self) -> bool:
        return all(a.gen != b.gen or a.sign == b.sign for a, b in zip(self.letters, self.letters[1:]))


def free_reduce(w: Word) -> Word:
    stack: list[Letter] = []
    for letter in w.letters:
        if stack and stack[-1].gen == letter.gen and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack))


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


def x(gen: int, power: int = 1) -> Word:
    """The word x_gen^power."""
    sign = 1 if power >= 0 else -1
    return Word((Letter(gen, sign),) * abs(power))


def random_reduced_word(rng: random.Random, rank: int, length: int) -> Word:
    """Uniform freely-reduced word of exactly ``length`` letters.

    The first letter is uniform over the 2r letters, every later one over the
    2r - 1 letters that do not cancel its predecessor.
    """
    letters: list[Letter] = []
    alphabet = [Letter(g, s) for g in range(1, rank + 1) for s in (1, -1)]
    for _ in range(length):
        if letters:
            forbidden = letters[-1].inverse()
            choices = [l for l in alphabet if l != forbidden]
        else:
            choices = alphabet
        letters.append(rng.choice(choices))
    return Word(tuple(letters))


def all_reduced_words(rank: int, length: int) -> Iterator[Word]:
    """Every freely-reduced word of exactly ``length`` letters, in lexicographic order."""
    alphabet = [Letter(g, s) for g in range(1, rank + 1) for s in (1, -1)]

    def extend(prefix: tuple[Letter, ...]) -> Iterator[tuple[Letter, ...]]:
        if len(prefix) == length:
            yield prefix
            return
        for l in alphabet:
            if prefix and prefix[-1] == l.inverse():
                continue
            yield from extend(prefix + (l,))

    for letters in extend(()):
        yield Word(letters)
