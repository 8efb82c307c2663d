"""Breadth-first oracles for word lengths, independent of the flow/Steiner machinery.

Both oracles search the Cayley graph of the group itself, deduplicating by
element (flow normal form for F/N', lamp configuration for the wreath
product). They answer exactly or return :data:`EXCEEDS_RADIUS`.
"""

from __future__ import annotations

from functools import lru_cache

from .groups import FreeSolvable, Lattice, evaluate
from .search import bfs_ball, bidirectional_distance
from .wreath import WreathElement
from .words import Word

EXCEEDS_RADIUS = "exceeds radius"
HARD_RADIUS_CAP = 12


def _check_radius(radius: int) -> None:
    if radius < 0 or radius > HARD_RADIUS_CAP:
        raise ValueError(f"oracle radius {radius} outside 0..{HARD_RADIUS_CAP}")


def bfs_geodesic_oracle_fn(w: Word, rank: int, radius: int):
    """Length of ``w`` in the free metabelian group of the given rank, by search."""
    _check_radius(radius)
    group = FreeSolvable(rank, 2)
    target = evaluate(w, group)
    d = bidirectional_distance(group.identity(), target, group.neighbours, radius)
    return EXCEEDS_RADIUS if d is None else d


def bfs_geodesic_oracle_wreath(e: WreathElement, radius: int):
    """Length of ``e`` in Z^r wr B over the generators t_i and a_i, by search."""
    _check_radius(radius)
    d = bidirectional_distance(WreathElement.identity(e.group), e, WreathElement.neighbours, radius)
    return EXCEEDS_RADIUS if d is None else d


@lru_cache(maxsize=4)
def fn_ball(rank: int, radius: int) -> dict:
    """Every free-metabelian element within ``radius`` of the identity, with its length."""
    _check_radius(radius)
    group = FreeSolvable(rank, 2)
    return bfs_ball(group.identity(), group.neighbours, radius)


def fn_length_from_ball(w: Word, rank: int, radius: int):
    ball = fn_ball(rank, radius)
    return ball.get(evaluate(w, FreeSolvable(rank, 2)), EXCEEDS_RADIUS)


def wreath_ball(rank: int, radius: int) -> dict:
    _check_radius(radius)
    return bfs_ball(WreathElement.identity(Lattice(rank)), WreathElement.neighbours, radius)
