"""Control-state reduction for grab-or-give games."""

from __future__ import annotations

from pathlib import Path

import pytest

from pawngames import (
    Configuration,
    Mechanism,
    OwnershipKind,
    PawnGame,
    SolverPreconditionError,
    parse_game,
    reduce_grab_or_give,
    solve_grab_or_give,
)
from pawngames.crossval import suite_gog
from pawngames.generators import gen_random_pawngame

DATA = Path(__file__).parent / "data"


def two_vertex_game():
    return PawnGame(
        n=2,
        edges=frozenset({(0, 1), (1, 1)}),
        targets=frozenset({1}),
        d=2,
        owners=(frozenset({0}), frozenset({1})),
        mechanism=Mechanism.grab_or_give(),
        names=("v", "u"),
    )


def test_reduction_shape_on_a_single_edge():
    red = reduce_grab_or_give(two_vertex_game())
    assert red.tb.n == 8
    # every game edge contributes three reduction edges per control side
    edges = {(v, u) for v in range(red.tb.n) for u in red.tb.succ[v]}
    expected = set()
    for v, u in ((0, 1), (1, 1)):
        for i in (1, 2):
            expected.add((red.main(v, i), red.intermediate(u, 3 - i)))
            expected.add((red.intermediate(u, 3 - i), red.main(u, i)))
            expected.add((red.intermediate(u, 3 - i), red.main(u, 3 - i)))
    assert edges == expected
    assert red.tb.targets == {red.main(1, 1), red.main(1, 2)}


def test_reduction_shape_on_g1():
    game, _ = parse_game((DATA / "g1.pawngame").read_text())
    gog = PawnGame(
        n=game.n, edges=game.edges, targets=game.targets, d=game.d,
        owners=game.owners, mechanism=Mechanism.grab_or_give(),
        names=game.names,
    )
    red = reduce_grab_or_give(gog)
    assert red.tb.n == 16
    t = game.names.index("t")
    assert red.tb.targets == {red.main(t, 1), red.main(t, 2)}


def test_forced_move_into_target_wins_for_both_control_states():
    game = two_vertex_game()
    assert solve_grab_or_give(game, Configuration(0, frozenset({0}))) == 1
    assert solve_grab_or_give(game, Configuration(0, frozenset())) == 1
    assert solve_grab_or_give(game, Configuration(1, frozenset())) == 1


def test_rejected_inputs():
    game, config = gen_random_pawngame(
        4, 3, OwnershipKind.OMVPP, Mechanism.grab_or_give(), 15
    )
    with pytest.raises(SolverPreconditionError, match="unique owner"):
        solve_grab_or_give(game, config)
    single_pawn = PawnGame(
        n=2,
        edges=frozenset({(0, 1), (1, 1)}),
        targets=frozenset({1}),
        d=1,
        owners=(frozenset({0}), frozenset({0})),
        mechanism=Mechanism.grab_or_give(),
    )
    # with one pawn the mandatory exchange is forced, so the free
    # controller-choice argument behind the reduction does not apply
    with pytest.raises(SolverPreconditionError, match="two pawns"):
        reduce_grab_or_give(single_pawn)


def test_agreement_and_control_abstraction_on_random_games():
    assert suite_gog(seed=31, count=120) == []
