"""Witness plays replayed against independently written exchange rules."""

from __future__ import annotations

import random

from pawngames import (
    AllConfigurations,
    Configuration,
    GrabRule,
    Mechanism,
    OwnershipKind,
    mover,
    solve_explicit,
    witness_play,
)
from pawngames.generators import gen_random_pawngame


def legal_next_pawn_sets(game, moved_by, pawns):
    """All pawn sets an exchange may produce, straight from the rules."""
    rule = game.mechanism.rule
    options = set()
    if rule in (GrabRule.OPTIONAL, GrabRule.K_GRABBING):
        options.add(pawns)
    if rule is GrabRule.K_GRABBING:
        options |= {pawns | {j} for j in range(game.d) if j not in pawns}
    elif rule is GrabRule.GRAB_OR_GIVE:
        options |= {pawns - {j} for j in pawns}
        options |= {pawns | {j} for j in range(game.d) if j not in pawns}
    else:
        if moved_by == 1:
            options |= {pawns - {j} for j in pawns}
        else:
            options |= {pawns | {j} for j in range(game.d) if j not in pawns}
    return options


def replay(game, config, steps):
    """Follow a witness play; returns the visited vertices or an error."""
    v, pawns = config.vertex, set(config.p1_pawns)
    grabs = config.grabs_left
    visited = [v]
    it = iter(steps)
    for step in it:
        if step[0] in ("cycle", "trapped"):
            break
        if step[0] != "move":
            return f"expected a move, got {step}"
        u = step[1]
        if (v, u) not in game.edges:
            return f"{v}->{u} is not an edge"
        moved_by = mover(game, Configuration(v, frozenset(pawns), grabs))
        exchange = next(it, None)
        if exchange is None:
            return "half-finished round"
        if exchange[0] in ("cycle", "trapped"):
            visited.append(u)
            break
        if exchange[0] == "nograb":
            new_pawns = set(pawns)
        elif exchange[0] == "grab":
            new_pawns = pawns | {exchange[1]} if exchange[1] not in pawns \
                else pawns - {exchange[1]}
            if game.mechanism.rule is GrabRule.K_GRABBING:
                if exchange[1] in pawns or grabs == 0:
                    return f"illegal grab {exchange}"
                grabs -= 1
        else:
            new_pawns = pawns - {exchange[1]} if exchange[1] in pawns \
                else pawns | {exchange[1]}
        if frozenset(new_pawns) not in legal_next_pawn_sets(
            game, moved_by, frozenset(pawns)
        ):
            return f"illegal exchange {exchange} after player {moved_by} moved"
        pawns = set(new_pawns)
        v = u
        visited.append(v)
    return visited


def test_winning_witnesses_reach_a_target_legally():
    rng = random.Random(70)
    wins = 0
    for i in range(150):
        kind = rng.choice(list(OwnershipKind))
        n = rng.randint(2, 6)
        if kind is OwnershipKind.OVPP:
            d = n
        elif kind is OwnershipKind.MVPP:
            n = max(n, 3)
            d = rng.randint(2, n - 1)
        else:
            d = rng.randint(2, 5)
        mech = rng.choice([
            Mechanism.optional(), Mechanism.always(),
            Mechanism.grab_or_give(), Mechanism.k_grabbing(rng.randint(0, 2)),
        ])
        game, config = gen_random_pawngame(n, d, kind, mech, 88_000 + i)
        result = solve_explicit(game, config)
        outcome = replay(game, config, witness_play(game, result))
        assert isinstance(outcome, list), outcome
        if result.winner == 1:
            wins += 1
            assert outcome[-1] in game.targets
        else:
            assert not set(outcome) & game.targets
    assert wins > 20


def test_single_root_and_all_roots_solvers_agree():
    rng = random.Random(71)
    for i in range(100):
        n = rng.randint(2, 5)
        d = rng.randint(2, 5)
        mech = rng.choice([
            Mechanism.optional(), Mechanism.always(),
            Mechanism.grab_or_give(), Mechanism.k_grabbing(rng.randint(0, 2)),
        ])
        game, config = gen_random_pawngame(
            n, d, OwnershipKind.OMVPP, mech, 89_000 + i
        )
        oracle = AllConfigurations(game)
        assert solve_explicit(game, config).winner == oracle.winner(
            config.vertex, config.p1_pawns, config.grabs_left
        )
