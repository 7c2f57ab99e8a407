"""Polynomial-time solver for one-vertex-per-pawn optional-grabbing games.

The algorithm grows a set ``W`` of vertices from which Player 1 wins no
matter who moves into them, interleaving three absorption rules:

* closure: vertices all of whose successors lie in ``W``;
* ``B'``: border vertices whose every successor is in the border or ``W``
  (if the opponent dodges the region she lands in the border, where the
  moved-to vertex can be grabbed);
* ``R \\ P0``: vertices whose every successor leads into the border and
  which Player 2 controls initially, so she is eventually forced to step
  into the border herself.

Player 1 additionally wins immediately when the initial vertex sits on the
border and he controls its pawn.  In OVPP games pawns are identified with
the vertex they own, so the initial pawn set is treated as a vertex set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SolverPreconditionError
from .model import (
    Configuration,
    GrabRule,
    OwnershipKind,
    PawnGame,
    classify,
    validate_configuration,
)


@dataclass
class LevelTrace:
    """One absorption round: the sets the round was computed from."""

    w: frozenset[int]
    border: frozenset[int] = frozenset()
    border_closed: frozenset[int] = frozenset()
    forced: frozenset[int] = frozenset()
    rule: str = ""


@dataclass
class OptionalGrabbingResult:
    winner: int
    trace: list[LevelTrace] = field(default_factory=list)


def solve_ovpp_optional(g: PawnGame, c: Configuration) -> OptionalGrabbingResult:
    """Decide the winner of an OVPP optional-grabbing game from ``c``."""
    if g.mechanism.rule is not GrabRule.OPTIONAL:
        raise SolverPreconditionError("solver handles optional-grabbing only")
    if classify(g) is not OwnershipKind.OVPP:
        raise SolverPreconditionError("solver handles one-vertex-per-pawn only")
    validate_configuration(g, c)

    vertex_of = {next(iter(g.owners[v])): v for v in range(g.n)}
    p0_vertices = {vertex_of[j] for j in c.p1_pawns}
    v0 = c.vertex

    w = set(g.targets)
    trace: list[LevelTrace] = [LevelTrace(w=frozenset(w), rule="targets")]

    while True:
        if v0 in w:
            return OptionalGrabbingResult(1, trace)

        closed = {u for u in range(g.n) if u not in w and set(g.succ[u]) <= w}
        if closed:
            w |= closed
            trace.append(LevelTrace(w=frozenset(w), rule="closure"))
            continue

        border = {u for u in range(g.n) if u not in w and set(g.succ[u]) & w}
        if not border:
            return OptionalGrabbingResult(2, trace)
        if v0 in border and v0 in p0_vertices:
            trace.append(LevelTrace(w=frozenset(w), border=frozenset(border),
                                    rule="initial-on-border"))
            return OptionalGrabbingResult(1, trace)

        border_closed = {u for u in border if set(g.succ[u]) <= border | w}
        if border_closed:
            w |= border_closed
            trace.append(LevelTrace(w=frozenset(w), border=frozenset(border),
                                    border_closed=frozenset(border_closed),
                                    rule="border-closed"))
            continue

        forced = {u for u in range(g.n) if set(g.succ[u]) <= border}
        fresh = (forced - p0_vertices) - w
        if fresh:
            w |= fresh
            trace.append(LevelTrace(w=frozenset(w), border=frozenset(border),
                                    forced=frozenset(fresh), rule="forced"))
            continue
        return OptionalGrabbingResult(2, trace)
