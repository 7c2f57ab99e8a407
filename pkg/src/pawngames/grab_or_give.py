"""Polynomial-time solver for grab-or-give games with unique vertex owners.

After every token move the non-mover either grabs the mover's pawn or hands
one over, so she alone decides who controls the vertex the token just
reached.  The winner therefore depends on the configuration only through
who currently moves, which a turn-based game over control states captures:
each game vertex ``v`` yields main vertices ``(v, 1)`` and ``(v, 2)`` (the
player controlling ``v``) and intermediate vertices where the opponent
picks the controller of the next vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SolverPreconditionError
from .model import (
    Configuration,
    GrabRule,
    OwnershipKind,
    PawnGame,
    classify,
    mover,
    validate_configuration,
)
from .turnbased import TurnBasedGame, solve_turnbased


@dataclass(frozen=True)
class GoGReduction:
    """Turn-based control-state game: 4 vertices per game vertex.

    Ids: ``(v, 1)`` is ``v``, ``(v, 2)`` is ``n + v``, the intermediates
    ``(v^, 1)`` and ``(v^, 2)`` are ``2n + v`` and ``3n + v``.
    """

    tb: TurnBasedGame
    n: int

    def main(self, v: int, player: int) -> int:
        return v if player == 1 else self.n + v

    def intermediate(self, v: int, player: int) -> int:
        return (1 + player) * self.n + v


def reduce_grab_or_give(g: PawnGame) -> GoGReduction:
    """Build the control-state game; rejects overlapping ownership.

    Games with a single pawn are rejected as well: the mandatory exchange
    then has no neutral pawn to absorb it, control flips forcibly every
    round, and the free-controller-choice argument breaks down.
    """
    if g.mechanism.rule is not GrabRule.GRAB_OR_GIVE:
        raise SolverPreconditionError("reduction handles grab-or-give only")
    if classify(g) is OwnershipKind.OMVPP:
        raise SolverPreconditionError(
            "grab-or-give reduction needs a unique owner per vertex"
        )
    if g.d < 2:
        raise SolverPreconditionError(
            "grab-or-give reduction needs at least two pawns"
        )
    n = g.n
    succ: list[list[int]] = [[] for _ in range(4 * n)]
    for v, u in g.edges:
        for i in (1, 2):
            main = v if i == 1 else n + v
            inter = (1 + (3 - i)) * n + u
            succ[main].append(inter)
            succ[inter].append(u if i == 1 else n + u)
            succ[inter].append(u if 3 - i == 1 else n + u)
    tb = TurnBasedGame(
        n=4 * n,
        p1_vertices=frozenset(range(n)) | frozenset(range(2 * n, 3 * n)),
        succ=tuple(tuple(sorted(set(s))) for s in succ),
        targets=frozenset(g.targets) | frozenset(n + t for t in g.targets),
    )
    return GoGReduction(tb=tb, n=n)


def solve_grab_or_give(g: PawnGame, c: Configuration) -> int:
    """Winner from ``c``: solve the reduction from the mover's control state."""
    validate_configuration(g, c)
    red = reduce_grab_or_give(g)
    start = red.main(c.vertex, mover(g, c))
    result = solve_turnbased(red.tb)
    return 1 if start in result.region else 2
