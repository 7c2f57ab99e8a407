"""Attractor computation against an exhaustive game-tree search."""

from __future__ import annotations

import random

from bruteforce import bruteforce_region, p2_strategy_avoids, replay_p1_strategy
from pawngames import TurnBasedGame, attractor_levels, solve_turnbased
from pawngames.generators import gen_random_turnbased
from pawngames.turnbased import parse_tbgame, serialize_tbgame


def test_single_looping_target():
    tb = TurnBasedGame(1, frozenset({0}), ((0,),), frozenset({0}))
    assert attractor_levels(tb) == [frozenset({0})]


def test_forced_chain():
    # v2 (opponent) -> v1 (player 1) -> t, with a loop on t
    tb = TurnBasedGame(
        n=3,
        p1_vertices=frozenset({1}),
        succ=((0,), (0,), (1,)),
        targets=frozenset({0}),
    )
    assert solve_turnbased(tb).region == frozenset({0, 1, 2})


def test_dead_end_rules():
    # a stuck opponent vertex is winning, a stuck player-1 vertex is not
    tb = TurnBasedGame(
        n=3,
        p1_vertices=frozenset({1}),
        succ=((0,), (), ()),
        targets=frozenset({0}),
    )
    result = solve_turnbased(tb)
    assert 2 in result.region
    assert 1 not in result.region


def test_region_matches_bruteforce_on_500_random_games():
    rng = random.Random(23)
    for i in range(500):
        tb = gen_random_turnbased(rng.randint(1, 9), 9000 + i)
        assert solve_turnbased(tb).region == bruteforce_region(tb), f"game {i}"


def test_levels_are_monotone_and_bounded():
    for i in range(100):
        tb = gen_random_turnbased(random.Random(i).randint(1, 9), 400 + i)
        levels = attractor_levels(tb)
        assert levels[0] == tb.targets
        for a, b in zip(levels, levels[1:]):
            assert a < b
        assert len(levels) <= tb.n + 1


def test_strategies_are_winning_witnesses():
    for i in range(200):
        tb = gen_random_turnbased(random.Random(i).randint(2, 8), 8100 + i)
        result = solve_turnbased(tb)
        for v in result.region:
            steps = replay_p1_strategy(tb, result.p1_strategy, v)
            assert 0 <= steps <= tb.n, f"game {i} vertex {v}"
        for v in range(tb.n):
            if v not in result.region:
                assert p2_strategy_avoids(tb, result.p2_strategy, v), \
                    f"game {i} vertex {v}"


def test_tbgame_text_roundtrip():
    tb = gen_random_turnbased(6, 77)
    text = serialize_tbgame(tb)
    back = parse_tbgame(text)
    assert back == tb
    assert serialize_tbgame(back) == text
