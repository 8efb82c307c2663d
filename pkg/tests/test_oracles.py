import pytest

from magnus_qi.groups import FreeSolvable, Lattice, evaluate
from magnus_qi.oracles import (
    EXCEEDS_RADIUS,
    bfs_geodesic_oracle_fn,
    bfs_geodesic_oracle_wreath,
    fn_ball,
    fn_length_from_ball,
    wreath_ball,
)
from magnus_qi.search import bfs_ball, bidirectional_distance
from magnus_qi.words import Word, all_reduced_words, commutator, x
from magnus_qi.wreath import WreathElement, magnus_embed

B2 = Lattice(2)
C = commutator(x(1), x(2))


def test_fn_oracle_examples():
    assert bfs_geodesic_oracle_fn(C, 2, 6) == 4
    assert bfs_geodesic_oracle_fn(Word(), 2, 6) == 0
    assert bfs_geodesic_oracle_fn(x(1) * x(2), 2, 1) == EXCEEDS_RADIUS


def test_wreath_oracle_examples():
    assert bfs_geodesic_oracle_wreath(magnus_embed(x(1, 2), B2), 6) == 4
    assert bfs_geodesic_oracle_wreath(WreathElement.identity(B2), 6) == 0
    assert bfs_geodesic_oracle_wreath(magnus_embed(C, B2), 8) == 8
    assert bfs_geodesic_oracle_wreath(magnus_embed(C, B2), 7) == EXCEEDS_RADIUS


def test_radius_cap():
    with pytest.raises(ValueError):
        bfs_geodesic_oracle_fn(C, 2, 99)


def test_ball_matches_exhaustive_word_enumeration():
    """Shortest word per element, by listing every word of length <= 6."""
    S = FreeSolvable(2, 2)
    shortest: dict = {}
    for n in range(7):
        for w in all_reduced_words(2, n):
            shortest.setdefault(evaluate(w, S), n)
    assert fn_ball(2, 6) == shortest


def test_bidirectional_agrees_with_ball():
    S = FreeSolvable(2, 2)
    ball = fn_ball(2, 6)
    for g, d in list(ball.items())[::7]:
        assert bidirectional_distance(S.identity(), g, S.neighbours, 6) == d
    assert fn_length_from_ball(C, 2, 6) == 4
    assert fn_length_from_ball(x(1, 7), 2, 6) == EXCEEDS_RADIUS


def test_wreath_bidirectional_agrees_with_ball():
    ball = wreath_ball(2, 4)
    one = WreathElement.identity(B2)
    for e, d in list(ball.items())[::11]:
        assert bidirectional_distance(one, e, WreathElement.neighbours, 4) == d


def test_bfs_on_a_path_graph():
    nbrs = lambda v: [u for u in (v - 1, v + 1) if 0 <= u <= 9]
    assert bfs_ball(0, nbrs, 3) == {0: 0, 1: 1, 2: 2, 3: 3}
    assert bidirectional_distance(0, 9, nbrs, 9) == 9
    assert bidirectional_distance(0, 9, nbrs, 8) is None
